//! Cartan data, symmetrizers and q-number scalars.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{CartanError, SeriesError};
use crate::series::special::divide_by_var;
use crate::series::{q_frac, GradedSeries, VarContext};

/// Symmetrizable finite-type Cartan matrix with symmetrizers d_i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanDatum {
    pub name: String,
    pub a: Vec<Vec<i64>>,
    pub d: Vec<i64>,
}

/// gl_n data: nodes I = 1..n−1, J = 1..n, c_ji = −δ_ji + δ_{j,i+1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GlnDatum {
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Algebra {
    Semisimple(CartanDatum),
    Gln(GlnDatum),
}

impl GlnDatum {
    /// c_ji with 1-based j ∈ J, i ∈ I.
    pub fn c(&self, j: usize, i: usize) -> i64 {
        let mut c = 0;
        if j == i {
            c -= 1;
        }
        if j == i + 1 {
            c += 1;
        }
        c
    }

    /// Matrix rows j = 1..n, columns i = 1..n−1.
    pub fn c_matrix(&self) -> Vec<Vec<i64>> {
        (1..=self.n).map(|j| (1..self.n).map(|i| self.c(j, i)).collect()).collect()
    }
}

impl CartanDatum {
    /// Validates `a` and computes the minimal positive symmetrizer, or checks the one supplied.
    pub fn new(name: &str, a: Vec<Vec<i64>>, d: Option<Vec<i64>>) -> Result<Self, CartanError> {
        let n = a.len();
        for row in &a {
            if row.len() != n {
                return Err(CartanError::NotSquare(n, row.len()));
            }
        }
        for i in 0..n {
            if a[i][i] != 2 {
                return Err(CartanError::Diagonal(i + 1, a[i][i]));
            }
            for j in 0..n {
                if i != j && a[i][j] > 0 {
                    return Err(CartanError::OffDiagonal(i + 1, j + 1, a[i][j]));
                }
                if (a[i][j] == 0) != (a[j][i] == 0) {
                    return Err(CartanError::NotSymmetrizable);
                }
            }
        }
        let d = match d {
            Some(d) => {
                if d.len() != n || d.iter().any(|&x| x <= 0) || !symmetrizes(&a, &d) {
                    return Err(CartanError::BadSymmetrizer);
                }
                d
            }
            None => minimal_symmetrizer(&a)?,
        };
        Ok(CartanDatum { name: name.to_string(), a, d })
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    /// 0-based entries.
    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn d(&self, i: usize) -> i64 {
        self.d[i]
    }

    /// d_i a_ij.
    pub fn b(&self, i: usize, j: usize) -> i64 {
        self.d[i] * self.a[i][j]
    }

    pub fn builtin(name: &str) -> Result<Self, CartanError> {
        let (a, d): (Vec<Vec<i64>>, Vec<i64>) = match name {
            "A1" => (vec![vec![2]], vec![1]),
            "A2" => (vec![vec![2, -1], vec![-1, 2]], vec![1, 1]),
            "A3" => (vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]], vec![1, 1, 1]),
            "B2" => (vec![vec![2, -1], vec![-2, 2]], vec![2, 1]),
            "G2" => (vec![vec![2, -1], vec![-3, 2]], vec![3, 1]),
            _ => return Err(CartanError::UnknownType(name.to_string())),
        };
        CartanDatum::new(name, a, Some(d))
    }

    /// Plain text: node count, matrix rows, optional symmetrizer row.
    pub fn from_text(name: &str, text: &str) -> Result<Self, CartanError> {
        let lines: Vec<&str> = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .collect();
        let first = lines.first().ok_or_else(|| CartanError::Malformed("empty file".into()))?;
        let n: usize = first.parse().map_err(|_| CartanError::Malformed(format!("bad node count `{}`", first)))?;
        if n == 0 {
            return Err(CartanError::Malformed("node count must be positive".into()));
        }
        if lines.len() != n + 1 && lines.len() != n + 2 {
            return Err(CartanError::Malformed(format!("expected {} or {} rows after the count", n, n + 1)));
        }
        let parse_row = |l: &str| -> Result<Vec<i64>, CartanError> {
            l.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<i64>().map_err(|_| CartanError::Malformed(format!("bad entry `{}`", s))))
                .collect()
        };
        let a = lines[1..=n].iter().map(|l| parse_row(l)).collect::<Result<Vec<_>, _>>()?;
        let d = if lines.len() == n + 2 { Some(parse_row(lines[n + 1])?) } else { None };
        CartanDatum::new(name, a, d)
    }
}

fn symmetrizes(a: &[Vec<i64>], d: &[i64]) -> bool {
    let n = a.len();
    (0..n).all(|i| (0..n).all(|j| d[i] * a[i][j] == d[j] * a[j][i]))
}

fn minimal_symmetrizer(a: &[Vec<i64>]) -> Result<Vec<i64>, CartanError> {
    let n = a.len();
    let mut d: Vec<Option<Ratio<i64>>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Ratio::from_integer(1));
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let di = d[i].unwrap();
            for j in 0..n {
                if j == i || a[i][j] == 0 {
                    continue;
                }
                // d_j = d_i a_ij / a_ji
                let dj = di * Ratio::new(a[i][j], a[j][i]);
                match d[j] {
                    None => {
                        d[j] = Some(dj);
                        stack.push(j);
                    }
                    Some(x) if x != dj => return Err(CartanError::NotSymmetrizable),
                    _ => {}
                }
            }
        }
    }
    let d: Vec<Ratio<i64>> = d.into_iter().map(|x| x.unwrap()).collect();
    let l = d.iter().fold(1i64, |acc, x| acc.lcm(x.denom()));
    let ints: Vec<i64> = d.iter().map(|x| (x * l).to_integer()).collect();
    let g = ints.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    let out: Vec<i64> = ints.iter().map(|x| x / g).collect();
    if out.iter().any(|&x| x <= 0) {
        return Err(CartanError::NotSymmetrizable);
    }
    Ok(out)
}

impl Algebra {
    /// `A1`, `A2`, `A3`, `B2`, `G2`, `gl_n(3)` or `gl3`.
    pub fn load(spec: &str) -> Result<Self, CartanError> {
        let s = spec.trim();
        let gl = s
            .strip_prefix("gl_n(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| s.strip_prefix("gl"));
        if let Some(num) = gl {
            let n: usize = num.parse().map_err(|_| CartanError::UnknownType(s.to_string()))?;
            if n < 1 {
                return Err(CartanError::UnknownType(s.to_string()));
            }
            return Ok(Algebra::Gln(GlnDatum { n }));
        }
        Ok(Algebra::Semisimple(CartanDatum::builtin(s)?))
    }
}

impl fmt::Display for CartanDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} a={:?} d={:?}", self.name, self.a, self.d)
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algebra::Semisimple(c) => write!(f, "{}", c),
            Algebra::Gln(g) => write!(f, "gl_n({}) c={:?}", g.n, g.c_matrix()),
        }
    }
}

/// q^{m} = e^{mℏ/2} as an ℏ-series; symbol `h` must be ℏ.
pub fn q_power(ctx: &Arc<VarContext>, h: usize, m: i64) -> GradedSeries {
    GradedSeries::var(ctx, h).scale(&q_frac(m, 2)).exp().expect("positive weight")
}

/// (q^{m} − q^{−m})/ℏ, computed exactly by division by ℏ.
fn qdiff_over_hbar(ctx: &Arc<VarContext>, h: usize, m: i64) -> Result<GradedSeries, SeriesError> {
    divide_by_var(ctx, h, |up| Ok(&q_power(up, h, m) - &q_power(up, h, -m)))
}

/// Quantum integer [n]_{q^e} with q^e = e^{eℏ/2}.
pub fn q_int_series(ctx: &Arc<VarContext>, h: usize, e: i64, n: i64) -> GradedSeries {
    if n == 0 {
        return GradedSeries::zero(ctx);
    }
    let num = qdiff_over_hbar(ctx, h, e * n).expect("ℏ-divisible");
    let den = qdiff_over_hbar(ctx, h, e).expect("ℏ-divisible");
    &num * &den.unit_inverse().expect("unit")
}

/// Gaussian binomial [n choose k]_{q^e}.
pub fn q_binom_series(ctx: &Arc<VarContext>, h: usize, e: i64, n: i64, k: i64) -> GradedSeries {
    if k < 0 || k > n {
        return GradedSeries::zero(ctx);
    }
    let mut num = GradedSeries::one(ctx);
    let mut den = GradedSeries::one(ctx);
    for t in 0..k {
        num = &num * &q_int_series(ctx, h, e, n - t);
        den = &den * &q_int_series(ctx, h, e, t + 1);
    }
    &num * &den.unit_inverse().expect("unit")
}

/// ℏ/(q^{e} − q^{−e}); constant term 1/e.
pub fn hbar_over_qdiff(ctx: &Arc<VarContext>, h: usize, e: i64) -> GradedSeries {
    qdiff_over_hbar(ctx, h, e).expect("ℏ-divisible").unit_inverse().expect("unit")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GaussKind {
    Qi,
    QInt,
    Binom,
}

/// q_i, [n]_{q_i} or [n choose k]_{q_i} for node `i` (0-based).
pub fn gauss_scalar(
    datum: &CartanDatum,
    kind: GaussKind,
    i: usize,
    n: i64,
    k: i64,
    ctx: &Arc<VarContext>,
    h: usize,
) -> GradedSeries {
    let e = datum.d(i);
    match kind {
        GaussKind::Qi => q_power(ctx, h, e),
        GaussKind::QInt => q_int_series(ctx, h, e, n),
        GaussKind::Binom => q_binom_series(ctx, h, e, n, k),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{q_int, Mono};

    fn hctx(n: u32) -> Arc<VarContext> {
        VarContext::new(vec![("hbar", 1)], n).unwrap()
    }

    #[test]
    fn builtins() {
        let a1 = CartanDatum::builtin("A1").unwrap();
        assert_eq!(a1.a, vec![vec![2]]);
        assert_eq!(a1.d, vec![1]);
        for name in ["A2", "A3", "B2", "G2"] {
            let c = CartanDatum::builtin(name).unwrap();
            // oracle: recomputed minimal symmetrizer agrees with the fixed one
            assert_eq!(minimal_symmetrizer(&c.a).unwrap(), c.d, "{}", name);
            assert!(symmetrizes(&c.a, &c.d));
        }
        let b2 = CartanDatum::builtin("B2").unwrap();
        assert_eq!(b2.d, vec![2, 1]);
        assert_eq!(b2.b(0, 1), b2.b(1, 0));
    }

    #[test]
    fn gl2_data() {
        match Algebra::load("gl_n(2)").unwrap() {
            Algebra::Gln(g) => assert_eq!(g.c_matrix(), vec![vec![-1], vec![1]]),
            _ => panic!(),
        }
        assert_eq!(Algebra::load("gl3").unwrap(), Algebra::Gln(GlnDatum { n: 3 }));
    }

    #[test]
    fn rejects_bad_matrices() {
        assert_eq!(CartanDatum::new("x", vec![vec![2, -1], vec![0, 2]], None), Err(CartanError::NotSymmetrizable));
        assert_eq!(CartanDatum::new("x", vec![vec![3]], None), Err(CartanError::Diagonal(1, 3)));
        assert_eq!(
            CartanDatum::new("x", vec![vec![2, -1], vec![-2, 2]], Some(vec![1, 1])),
            Err(CartanError::BadSymmetrizer)
        );
        // cyclic non-symmetrizable 3-node matrix
        let a = vec![vec![2, -1, -1], vec![-2, 2, -1], vec![-1, -1, 2]];
        assert_eq!(CartanDatum::new("x", a, None), Err(CartanError::NotSymmetrizable));
        assert!(matches!(CartanDatum::builtin("E9"), Err(CartanError::UnknownType(_))));
    }

    #[test]
    fn text_format() {
        let c = CartanDatum::from_text("file", "2\n2 -1\n-2 2\n").unwrap();
        assert_eq!(c.d, vec![2, 1]);
        let c = CartanDatum::from_text("file", "2\n2 -1\n-2 2\n4 2\n").unwrap();
        assert_eq!(c.d, vec![4, 2]);
        assert!(CartanDatum::from_text("file", "2\n2 -1\n").is_err());
    }

    #[test]
    fn quantum_two() {
        let c = hctx(4);
        let two = q_int_series(&c, 0, 1, 2);
        let expect = GradedSeries::from_terms(
            &c,
            vec![
                (Mono::one(1), q_int(2)),
                (Mono::var(1, 0, 2), q_frac(1, 4)),
                (Mono::var(1, 0, 4), q_frac(1, 192)),
            ],
        );
        assert_eq!(two, expect);
        assert_eq!(q_int_series(&c, 0, 1, 1), GradedSeries::one(&c));
    }

    #[test]
    fn quantum_integer_identities() {
        let c = hctx(7);
        let q = q_power(&c, 0, 1);
        let qi = q.unit_inverse().unwrap();
        for n in 1..=6 {
            let lhs = &q_int_series(&c, 0, 1, n) * &(&q - &qi);
            let rhs = &q_power(&c, 0, n) - &q_power(&c, 0, -n);
            assert_eq!(lhs, rhs);
            let s = q_int_series(&c, 0, 1, n);
            // even in ℏ, classical value n
            assert!(s.terms().iter().all(|(m, _)| m.exp(0) % 2 == 0));
            assert_eq!(s.constant_term(), q_int(n));
        }
        // [4 choose 2] = [4][3]/[2] classical 6
        let b = q_binom_series(&c, 0, 1, 4, 2);
        assert_eq!(b.constant_term(), q_int(6));
        assert_eq!(hbar_over_qdiff(&c, 0, 2).constant_term(), q_frac(1, 2));
    }
}
