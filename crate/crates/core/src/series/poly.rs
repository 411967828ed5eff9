//! Sparse multivariate (Laurent) polynomials over exact rationals.
//!
//! `Poly` carries no truncation; `GradedSeries` layers weight truncation on
//! top of it. Terms are kept sorted by the canonical monomial order
//! (total degree, then lexicographic on the exponent vector).

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Exponent vector. Negative entries are allowed (Laurent monomials).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(Box<[i16]>);

impl Mono {
    pub fn one(n: usize) -> Self {
        Mono(vec![0; n].into_boxed_slice())
    }

    pub fn var(n: usize, i: usize, e: i16) -> Self {
        let mut v = vec![0; n];
        v[i] = e;
        Mono(v.into_boxed_slice())
    }

    pub fn from_exps(v: Vec<i16>) -> Self {
        Mono(v.into_boxed_slice())
    }

    pub fn exps(&self) -> &[i16] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exp(&self, i: usize) -> i16 {
        self.0[i]
    }

    pub fn degree(&self) -> i32 {
        self.0.iter().map(|&e| e as i32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn weight(&self, w: &[u32]) -> i64 {
        self.0.iter().zip(w).map(|(&e, &x)| e as i64 * x as i64).sum()
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(o.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn div(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(o.0.iter()).map(|(a, b)| a - b).collect())
    }

    pub fn with_exp(&self, i: usize, e: i16) -> Mono {
        let mut v = self.0.clone();
        v[i] = e;
        Mono(v)
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a <= b)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    nvars: usize,
    terms: Vec<(Mono, Q)>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: Vec::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Q::one())
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        Self::monomial(Mono::one(nvars), c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(Mono::var(nvars, i, 1), Q::one())
    }

    pub fn monomial(m: Mono, c: Q) -> Self {
        let nvars = m.len();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Poly { nvars, terms: vec![(m, c)] }
    }

    /// Builds a canonical polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms<I: IntoIterator<Item = (Mono, Q)>>(nvars: usize, it: I) -> Self {
        let mut acc: HashMap<Mono, Q> = HashMap::new();
        for (m, c) in it {
            debug_assert_eq!(m.len(), nvars);
            if c.is_zero() {
                continue;
            }
            match acc.get_mut(&m) {
                Some(x) => *x += c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(nvars, acc)
    }

    pub(crate) fn from_map(nvars: usize, acc: HashMap<Mono, Q>) -> Self {
        let mut terms: Vec<(Mono, Q)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        Poly { nvars, terms }
    }

    /// Terms already sorted and free of duplicates and zeros.
    pub(crate) fn from_sorted_unchecked(nvars: usize, terms: Vec<(Mono, Q)>) -> Self {
        Poly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Mono, Q)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Mono, Q)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Mono) -> Q {
        match self.terms.binary_search_by(|t| t.0.cmp(m)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(&Mono::one(self.nvars))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    fn merge(&self, other: &Poly, sign: bool) -> Poly {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if sign { -b[j].1.clone() } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if sign { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if sign { -t.1.clone() } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        Poly { nvars: self.nvars, terms: out }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.merge(other, true)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono) -> Poly {
        // multiplying by a monomial is order-preserving for grlex
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(x, c)| (x.mul(m), c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.mul_filtered(other, None)
    }

    /// Product keeping only monomials of weight ≤ `order`.
    pub fn mul_trunc(&self, other: &Poly, weights: &[u32], order: u32) -> Poly {
        self.mul_filtered(other, Some((weights, order)))
    }

    fn mul_filtered(&self, other: &Poly, trunc: Option<(&[u32], u32)>) -> Poly {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.nvars);
        }
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            let keep = |x: &Mono| match trunc {
                Some((w, n)) => x.weight(w) <= n as i64,
                None => true,
            };
            let terms = big
                .terms
                .iter()
                .filter_map(|(x, d)| {
                    let y = x.mul(m);
                    keep(&y).then(|| (y, d * c))
                })
                .collect();
            return Poly { nvars: self.nvars, terms };
        }
        let mut acc: HashMap<Mono, Q> = HashMap::with_capacity(small.len() * big.len() / 2 + 1);
        match trunc {
            None => {
                for (ma, ca) in &small.terms {
                    for (mb, cb) in &big.terms {
                        let m = ma.mul(mb);
                        let p = ca * cb;
                        match acc.get_mut(&m) {
                            Some(x) => *x += p,
                            None => {
                                acc.insert(m, p);
                            }
                        }
                    }
                }
            }
            Some((w, n)) => {
                let n = n as i64;
                let mut bw: Vec<(i64, usize)> =
                    big.terms.iter().enumerate().map(|(i, (m, _))| (m.weight(w), i)).collect();
                bw.sort();
                for (ma, ca) in &small.terms {
                    let wa = ma.weight(w);
                    for &(wb, ib) in &bw {
                        if wa + wb > n {
                            break;
                        }
                        let (mb, cb) = &big.terms[ib];
                        let m = ma.mul(mb);
                        let p = ca * cb;
                        match acc.get_mut(&m) {
                            Some(x) => *x += p,
                            None => {
                                acc.insert(m, p);
                            }
                        }
                    }
                }
            }
        }
        Poly::from_map(self.nvars, acc)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut r = Poly::one(self.nvars);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn map_monos<F: Fn(&Mono) -> Mono>(&self, nvars: usize, f: F) -> Poly {
        Poly::from_terms(nvars, self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }

    pub fn filter<F: Fn(&Mono) -> bool>(&self, f: F) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| f(m)).cloned().collect(),
        }
    }

    /// Permutes variables: variable `i` becomes variable `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Poly {
        self.map_monos(self.nvars, |m| {
            let mut v = vec![0i16; m.len()];
            for (i, &e) in m.exps().iter().enumerate() {
                v[perm[i]] += e;
            }
            Mono::from_exps(v)
        })
    }

    pub fn min_exp(&self, i: usize) -> i16 {
        self.terms.iter().map(|(m, _)| m.exp(i)).min().unwrap_or(0)
    }

    pub fn max_exp(&self, i: usize) -> i16 {
        self.terms.iter().map(|(m, _)| m.exp(i)).max().unwrap_or(0)
    }

    /// Exact quotient by the binomial `x_a − x_b`, or `None` if it does not divide.
    pub fn div_binomial(&self, a: usize, b: usize) -> Option<Poly> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let lo = self.min_exp(a);
        let hi = self.max_exp(a);
        let n = self.nvars;
        // group by exponent of x_a
        let width = (hi - lo + 1) as usize;
        let mut groups: Vec<Vec<(Mono, Q)>> = vec![Vec::new(); width];
        for (m, c) in &self.terms {
            let k = (m.exp(a) - lo) as usize;
            groups[k].push((m.with_exp(a, 0), c.clone()));
        }
        let groups: Vec<Poly> = groups.into_iter().map(|g| Poly::from_terms(n, g)).collect();
        if width == 1 {
            return if groups[0].is_zero() { Some(Poly::zero(n)) } else { None };
        }
        let xb = Poly::var(n, b);
        let mut quot = vec![Poly::zero(n); width - 1];
        quot[width - 2] = groups[width - 1].clone();
        for k in (1..width - 1).rev() {
            quot[k - 1] = groups[k].add(&xb.mul(&quot[k]));
        }
        let rem = groups[0].add(&xb.mul(&quot[0]));
        if !rem.is_zero() {
            return None;
        }
        let mut terms = Vec::new();
        for (k, q) in quot.into_iter().enumerate() {
            let e = lo + k as i16;
            for (m, c) in q.terms {
                terms.push((m.with_exp(a, e), c));
            }
        }
        Some(Poly::from_terms(n, terms))
    }

    /// Exact quotient in the Laurent ring, or `None` if the divisor does not divide.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let n = self.nvars;
        if self.is_zero() {
            return Some(Poly::zero(n));
        }
        // strip monomial content of d and shift self to nonnegative exponents
        let dshift = Mono::from_exps((0..n).map(|i| d.min_exp(i)).collect());
        let fshift = Mono::from_exps((0..n).map(|i| self.min_exp(i).min(0)).collect());
        let dd = d.mul_mono(&Mono::from_exps(dshift.exps().iter().map(|e| -e).collect()));
        let mut f = self.mul_mono(&Mono::from_exps(fshift.exps().iter().map(|e| -e).collect()));
        let lex_max = |p: &Poly| -> (Mono, Q) {
            p.terms.iter().max_by(|x, y| x.0.exps().cmp(y.0.exps())).cloned().unwrap()
        };
        let (ld, lc) = lex_max(&dd);
        let mut quot: Vec<(Mono, Q)> = Vec::new();
        let mut steps = 0usize;
        while !f.is_zero() {
            let (lf, cf) = lex_max(&f);
            if !ld.divides(&lf) {
                return None;
            }
            let m = lf.div(&ld);
            let c = &cf / &lc;
            f = f.sub(&dd.mul_mono(&m).scale(&c));
            quot.push((m, c));
            steps += 1;
            if steps > 1_000_000 {
                return None;
            }
        }
        let q = Poly::from_terms(n, quot);
        Some(q.mul_mono(&fshift).mul_mono(&Mono::from_exps(dshift.exps().iter().map(|e| -e).collect())))
    }

    /// Substitutes a rational value for variable `i`.
    pub fn eval_var(&self, i: usize, x: &Q) -> Poly {
        Poly::from_terms(
            self.nvars,
            self.terms.iter().map(|(m, c)| {
                let e = m.exp(i);
                let f = if e >= 0 { num_traits::pow(x.clone(), e as usize) } else { num_traits::pow(x.recip(), (-e) as usize) };
                (m.with_exp(i, 0), c * f)
            }),
        )
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Poly {
        Poly::from_terms(
            self.nvars,
            self.terms.iter().filter(|(m, _)| m.exp(i) != 0).map(|(m, c)| {
                let e = m.exp(i);
                (m.with_exp(i, e - 1), c * q_int(e as i64))
            }),
        )
    }

    pub fn max_abs_coeff_bits(&self) -> u64 {
        self.terms
            .iter()
            .map(|(_, c)| c.numer().abs().bits().max(c.denom().bits()))
            .max()
            .unwrap_or(0)
    }

    /// Renders with the supplied variable names.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if k > 0 {
                s.push_str(if neg { " - " } else { " + " });
            } else if neg {
                s.push('-');
            }
            let a = c.abs();
            let mono = mono_string(m, names);
            if mono.is_empty() {
                s.push_str(&a.to_string());
            } else if a.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{}*{}", a, mono));
            }
        }
        s
    }
}

pub fn mono_string(m: &Mono, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exps().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if e == 1 {
            parts.push(names[i].clone());
        } else {
            parts.push(format!("{}^{}", names[i], e));
        }
    }
    parts.join("*")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{}", i)).collect();
        write!(f, "{}", self.display_with(&names))
    }
}

/// A quotient of two exact polynomials; equality by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    pub num: Poly,
    pub den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        RationalFunction { num, den }
    }

    pub fn from_poly(p: Poly) -> Self {
        let n = p.nvars();
        RationalFunction { num: p, den: Poly::one(n) }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return RationalFunction { num: self.num.add(&o.num), den: self.den.clone() };
        }
        RationalFunction {
            num: self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            den: self.den.mul(&o.den),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        RationalFunction { num: self.num.mul(&o.num), den: self.den.mul(&o.den) }
    }

    pub fn equals(&self, o: &Self) -> bool {
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }

    /// The polynomial this function equals, if the division is exact.
    pub fn to_poly(&self) -> Option<Poly> {
        self.num.div_exact(&self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Poly {
        Poly::var(3, i)
    }

    #[test]
    fn binomial_division_round_trip() {
        let f = x(0).mul(&x(0)).add(&x(1).scale(&q_int(3))).add(&Poly::one(3));
        let g = f.mul(&x(0).sub(&x(1)));
        assert_eq!(g.div_binomial(0, 1).unwrap(), f);
        assert!(f.div_binomial(0, 1).is_none());
    }

    #[test]
    fn laurent_binomial_division() {
        let inv = Poly::monomial(Mono::from_exps(vec![-2, 1, 0]), q_int(1));
        let f = inv.add(&x(2));
        let g = f.mul(&x(0).sub(&x(1)));
        assert_eq!(g.div_binomial(0, 1).unwrap(), f);
    }

    #[test]
    fn exact_division_general() {
        let a = x(0).add(&x(1).scale(&q_frac(1, 2))).add(&x(2).mul(&x(2)));
        let b = x(0).mul(&x(1)).sub(&Poly::constant(3, q_int(7)));
        let p = a.mul(&b);
        assert_eq!(p.div_exact(&b).unwrap(), a);
        assert_eq!(p.div_exact(&a).unwrap(), b);
        assert!(p.add(&Poly::one(3)).div_exact(&a).is_none());
    }

    #[test]
    fn rational_function_equality() {
        let r1 = RationalFunction::new(x(0).mul(&x(0)).sub(&x(1).mul(&x(1))), x(0).sub(&x(1)));
        let r2 = RationalFunction::from_poly(x(0).add(&x(1)));
        assert!(r1.equals(&r2));
        assert_eq!(r1.to_poly().unwrap(), x(0).add(&x(1)));
    }
}
