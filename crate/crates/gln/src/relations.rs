//! Mode-form relations of the gl_n Yangian (side Y) and the cleared gl_n quantum loop
//! relations (side U), checked exactly on monomial bases.

use std::time::Instant;

use loopyang_core::report::{param, CheckReport};
use loopyang_core::series::{q_frac, Poly};
use rayon::prelude::*;

use crate::rep::{PVector, Rep, Side};
use crate::GlnError;

/// A single operator; words apply their last letter first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Raise(usize, i64),
    Lower(usize, i64),
    /// θ_{j,r} on side Y, D_{j,r} on side U.
    Cartan(usize, i64),
    /// Multiplication by ξ_{i,r} (side Y) or P⁺_{i,k} − P⁻_{i,k} (side U).
    Xi(usize, i64),
}

pub fn apply(rep: &Rep, op: Op, v: &PVector) -> Result<PVector, GlnError> {
    match op {
        Op::Raise(i, r) => rep.raise(i, r, v),
        Op::Lower(i, r) => rep.lower(i, r, v),
        Op::Cartan(j, r) => Ok(match rep.side() {
            Side::Y => {
                let r = usize::try_from(r).map_err(|_| GlnError::BadMode(r))?;
                rep.multiply(|dd| rep.theta_y_mode(dd, j, r), v)
            }
            Side::U => rep.multiply(|dd| rep.d_u_mode(dd, j, r), v),
        }),
        Op::Xi(i, r) => Ok(match rep.side() {
            Side::Y => {
                let r = usize::try_from(r).map_err(|_| GlnError::BadMode(r))?;
                rep.multiply(|dd| rep.xi_y_mode(dd, i, r), v)
            }
            Side::U => rep.multiply(|dd| rep.p_diff(dd, i, r), v),
        }),
    }
}

pub fn apply_word(rep: &Rep, word: &[Op], v: &PVector) -> Result<PVector, GlnError> {
    let mut x = v.clone();
    for &op in word.iter().rev() {
        if x.is_zero() {
            break;
        }
        x = apply(rep, op, &x)?;
    }
    Ok(x)
}

/// Σ c·word = 0.
#[derive(Clone, Debug)]
pub struct Relation {
    pub id: &'static str,
    pub label: String,
    pub terms: Vec<(Poly, Vec<Op>)>,
}

impl Relation {
    fn new(id: &'static str, label: String) -> Self {
        Relation { id, label, terms: Vec::new() }
    }

    fn term(mut self, c: Poly, w: Vec<Op>) -> Self {
        self.terms.push((c, w));
        self
    }

    /// c·[A, B] = c·AB − c·BA.
    fn comm(self, c: Poly, a: Op, b: Op) -> Self {
        let m = c.neg();
        self.term(c, vec![a, b]).term(m, vec![b, a])
    }

    pub fn evaluate(&self, rep: &Rep, v: &PVector) -> Result<PVector, GlnError> {
        let mut acc = PVector::new();
        for (c, w) in &self.terms {
            acc = acc.add(&apply_word(rep, w, v)?.scale(c));
        }
        Ok(acc)
    }
}

fn delta(a: usize, b: usize) -> i64 {
    (a == b) as i64
}

/// sl_n Cartan entry a_{ii'}.
fn cartan(i: usize, j: usize) -> i64 {
    if i == j {
        2
    } else if i.abs_diff(j) == 1 {
        -1
    } else {
        0
    }
}

/// All relations of one side over modes 0..=w (side Y) or −w..=w (side U).
pub fn relations(rep: &Rep, w: i64) -> Vec<Relation> {
    match rep.side() {
        Side::Y => y_relations(rep, w),
        Side::U => u_relations(rep, w),
    }
}

fn y_relations(rep: &Rep, w: i64) -> Vec<Relation> {
    use Op::*;
    let n = rep.n();
    let h = rep.scalar();
    let one = rep.int(1);
    let nodes: Vec<usize> = (1..n).collect();
    let mut out = Vec::new();
    for j in 1..=n {
        for j2 in j..=n {
            for a in 0..=w {
                for b in 0..=w {
                    out.push(Relation::new("Y1", format!("j={} j'={} a={} b={}", j, j2, a, b)).comm(
                        one.clone(),
                        Cartan(j, a),
                        Cartan(j2, b),
                    ));
                }
            }
        }
    }
    for j in 1..=n {
        for &i in &nodes {
            let c = delta(j, i) - delta(j, i + 1);
            let hc = h.scale(&q_frac(c, 1));
            for a in 0..w {
                for b in 0..w {
                    let lab = format!("j={} i={} a={} b={}", j, i, a, b);
                    out.push(
                        Relation::new("Y2", format!("e {}", lab))
                            .comm(one.clone(), Cartan(j, a + 1), Raise(i, b))
                            .comm(one.neg(), Cartan(j, a), Raise(i, b + 1))
                            .term(hc.clone(), vec![Raise(i, b), Cartan(j, a)]),
                    );
                    out.push(
                        Relation::new("Y2", format!("f {}", lab))
                            .comm(one.clone(), Cartan(j, a + 1), Lower(i, b))
                            .comm(one.neg(), Cartan(j, a), Lower(i, b + 1))
                            .term(hc.neg(), vec![Cartan(j, a), Lower(i, b)]),
                    );
                }
            }
        }
    }
    for &i in &nodes {
        for a in 0..w {
            for b in 0..w {
                let lab = format!("i={} a={} b={}", i, a, b);
                out.push(
                    Relation::new("Y3", format!("e {}", lab))
                        .comm(one.clone(), Raise(i, a + 1), Raise(i, b))
                        .comm(one.neg(), Raise(i, a), Raise(i, b + 1))
                        .term(h.neg(), vec![Raise(i, a), Raise(i, b)])
                        .term(h.neg(), vec![Raise(i, b), Raise(i, a)]),
                );
                out.push(
                    Relation::new("Y3", format!("f {}", lab))
                        .comm(one.clone(), Lower(i, a + 1), Lower(i, b))
                        .comm(one.neg(), Lower(i, a), Lower(i, b + 1))
                        .term(h.clone(), vec![Lower(i, a), Lower(i, b)])
                        .term(h.clone(), vec![Lower(i, b), Lower(i, a)]),
                );
                if i + 1 < n {
                    let lab = format!("i={} r={} s={}", i, a, b);
                    out.push(
                        Relation::new("Y3", format!("e mixed {}", lab))
                            .comm(one.clone(), Raise(i, a + 1), Raise(i + 1, b))
                            .comm(one.neg(), Raise(i, a), Raise(i + 1, b + 1))
                            .term(h.clone(), vec![Raise(i + 1, b), Raise(i, a)]),
                    );
                    out.push(
                        Relation::new("Y3", format!("f mixed {}", lab))
                            .comm(one.clone(), Lower(i, a + 1), Lower(i + 1, b))
                            .comm(one.neg(), Lower(i, a), Lower(i + 1, b + 1))
                            .term(h.neg(), vec![Lower(i, a), Lower(i + 1, b)]),
                    );
                }
            }
        }
    }
    for &i in &nodes {
        for &i2 in &nodes {
            for r in 0..=w {
                for s in 0..=w {
                    let mut rel = Relation::new("Y4", format!("i={} i'={} r={} s={}", i, i2, r, s)).comm(
                        one.clone(),
                        Raise(i, r),
                        Lower(i2, s),
                    );
                    if i == i2 {
                        rel = rel.term(one.neg(), vec![Xi(i, r + s)]);
                    }
                    out.push(rel);
                }
            }
        }
    }
    out.extend(serre(rep, w, 0, rep.int(2), "Y5"));
    out
}

/// Serre relations for |i − i'| = 1 and commutation for |i − i'| > 1, modes in lo..=w.
fn serre(rep: &Rep, w: i64, lo: i64, two_coef: Poly, id: &'static str) -> Vec<Relation> {
    use Op::*;
    let n = rep.n();
    let one = rep.int(1);
    let mut out = Vec::new();
    for i in 1..n {
        for i2 in 1..n {
            let dist = i.abs_diff(i2);
            if dist == 0 {
                continue;
            }
            for (tag, mk) in [("e", Raise as fn(usize, i64) -> Op), ("f", Lower as fn(usize, i64) -> Op)] {
                if dist > 1 {
                    for k in lo..=w {
                        for l in lo..=w {
                            out.push(
                                Relation::new(id, format!("{} i={} i'={} k={} l={}", tag, i, i2, k, l))
                                    .comm(one.clone(), mk(i, k), mk(i2, l)),
                            );
                        }
                    }
                    continue;
                }
                for k1 in lo..=w {
                    for k2 in k1..=w {
                        for l in lo..=w {
                            let mut rel =
                                Relation::new(id, format!("{} i={} i'={} k1={} k2={} l={}", tag, i, i2, k1, k2, l));
                            for (a, b) in [(k1, k2), (k2, k1)] {
                                rel = rel
                                    .term(one.clone(), vec![mk(i, a), mk(i, b), mk(i2, l)])
                                    .term(two_coef.neg(), vec![mk(i, a), mk(i2, l), mk(i, b)])
                                    .term(one.clone(), vec![mk(i2, l), mk(i, a), mk(i, b)]);
                            }
                            out.push(rel);
                        }
                    }
                }
            }
        }
    }
    out
}

fn u_relations(rep: &Rep, w: i64) -> Vec<Relation> {
    use Op::*;
    let n = rep.n();
    let one = rep.int(1);
    let nodes: Vec<usize> = (1..n).collect();
    let mut out = Vec::new();
    for j in 1..=n {
        for j2 in j..=n {
            for r in -w..=w {
                for s in -w..=w {
                    out.push(
                        Relation::new("QL1", format!("j={} j'={} r={} s={}", j, j2, r, s))
                            .comm(one.clone(), Cartan(j, r), Cartan(j2, s)),
                    );
                }
            }
        }
    }
    for j in 1..=n {
        for &i in &nodes {
            let c = -delta(j, i) + delta(j, i + 1);
            for r in -w..=w {
                for k in -w..=w {
                    if !(-w..=w).contains(&(k + r)) {
                        continue;
                    }
                    let coef = if r == 0 {
                        rep.int(c)
                    } else {
                        rep.q_pow(-c * r).mul(&rep.q_number(c * r)).scale(&q_frac(1, r))
                    };
                    let lab = format!("j={} i={} r={} k={}", j, i, r, k);
                    let shift = if r == 0 { 0 } else { r };
                    out.push(
                        Relation::new("QL2", format!("E {}", lab))
                            .comm(one.clone(), Cartan(j, r), Raise(i, k))
                            .term(coef.neg(), vec![Raise(i, k + shift)]),
                    );
                    out.push(
                        Relation::new("QL2", format!("F {}", lab))
                            .comm(one.clone(), Cartan(j, r), Lower(i, k))
                            .term(coef, vec![Lower(i, k + shift)]),
                    );
                }
            }
        }
    }
    for &i in &nodes {
        for &i2 in &nodes {
            let s = i as i64 - i2 as i64;
            let a = cartan(i, i2);
            for k in -w..w {
                for l in -w..w {
                    let lab = format!("i={} i'={} k={} l={}", i, i2, k, l);
                    out.push(
                        Relation::new("QL3", format!("E {}", lab))
                            .term(rep.q_pow(s), vec![Raise(i, k + 1), Raise(i2, l)])
                            .term(rep.q_pow(a).neg(), vec![Raise(i, k), Raise(i2, l + 1)])
                            .term(rep.q_pow(a + s).neg(), vec![Raise(i2, l), Raise(i, k + 1)])
                            .term(one.clone(), vec![Raise(i2, l + 1), Raise(i, k)]),
                    );
                    out.push(
                        Relation::new("QL3", format!("F {}", lab))
                            .term(rep.q_pow(a + s), vec![Lower(i, k + 1), Lower(i2, l)])
                            .term(one.neg(), vec![Lower(i, k), Lower(i2, l + 1)])
                            .term(rep.q_pow(s).neg(), vec![Lower(i2, l), Lower(i, k + 1)])
                            .term(rep.q_pow(a), vec![Lower(i2, l + 1), Lower(i, k)]),
                    );
                }
            }
        }
    }
    let qd = rep.q_pow(1).sub(&rep.q_pow(-1));
    for &i in &nodes {
        for &i2 in &nodes {
            for k in -w..=w {
                for l in -w..=w {
                    let mut rel = Relation::new("QL4", format!("i={} i'={} k={} l={}", i, i2, k, l)).comm(
                        qd.clone(),
                        Raise(i, k),
                        Lower(i2, l),
                    );
                    if i == i2 {
                        rel = rel.term(one.neg(), vec![Xi(i, k + l)]);
                    }
                    out.push(rel);
                }
            }
        }
    }
    out.extend(serre(rep, w, -w, rep.q_pow(1).add(&rep.q_pow(-1)), "QL5"));
    out
}

/// Families reported, in order.
pub fn relation_ids(side: Side) -> &'static [&'static str] {
    match side {
        Side::Y => &["Y1", "Y2", "Y3", "Y4", "Y5"],
        Side::U => &["QL1", "QL2", "QL3", "QL4", "QL5"],
    }
}

/// One report per relation family, exact on every basis vector of degree ≤ `deg`.
pub fn relations_check(side: Side, n: usize, d: usize, window: i64, deg: usize) -> Result<Vec<CheckReport>, GlnError> {
    let rep = Rep::new(side, n, d)?;
    let basis = rep.basis(deg);
    let rels = relations(&rep, window);
    let mut out = Vec::new();
    for &id in relation_ids(side) {
        let t = Instant::now();
        let mine: Vec<&Relation> = rels.iter().filter(|r| r.id == id).collect();
        let mut result = first_failure(&rep, &mine, &basis);
        if id == "QL2" && result.is_ok() {
            result = theta_log_check(&rep, window);
        }
        let count = mine.len();
        out.push(
            CheckReport::from_result(
                &format!("gln.{}", id),
                vec![
                    param("side", side),
                    param("n", n),
                    param("d", d),
                    param("window", window),
                    param("deg", deg),
                ],
                result,
                t,
            )
            .with_note(format!("{} mode instances on {} basis vectors", count, basis.len())),
        );
    }
    Ok(out)
}

fn first_failure(rep: &Rep, rels: &[&Relation], basis: &[PVector]) -> Result<(), String> {
    let outcomes: Vec<Option<String>> = rels
        .par_iter()
        .map(|rel| {
            for v in basis {
                match rel.evaluate(rep, v) {
                    Ok(x) if x.is_zero() => {}
                    Ok(x) => {
                        let comp = x.first_difference(&PVector::new(), rep.names()).unwrap_or_default();
                        let src: Vec<String> = v.iter().map(|(dd, p)| format!("{} {}", dd, p.display_with(rep.names()))).collect();
                        return Some(format!("{} on {}: residual {}", rel.label, src.join(" "), comp));
                    }
                    Err(e) => return Some(format!("{}: {}", rel.label, e)),
                }
            }
            None
        })
        .collect();
    match outcomes.into_iter().flatten().next() {
        None => Ok(()),
        Some(e) => Err(e),
    }
}

/// D_{j,±s} closed forms against log(q^{∓D_{j,0}}Θ^±_j), each expansion on its own.
fn theta_log_check(rep: &Rep, window: i64) -> Result<(), String> {
    let len = window as usize + 1;
    for dd in rep.partitions() {
        for j in 1..=rep.n() {
            for plus in [true, false] {
                let l = rep.d_u_from_log(&dd, j, plus, len);
                for s in 1..len {
                    let r = if plus { s as i64 } else { -(s as i64) };
                    if l[s] != rep.d_u_mode(&dd, j, r) {
                        return Err(format!("D_{{{},{}}} on {} differs from the log of Θ", j, r, dd));
                    }
                }
            }
        }
    }
    Ok(())
}
