//! Operator identities on V_L^T checked as exact matrices per bucket.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::basis::{buckets_upto, BucketKey};
use super::space::{FockSpace, Root};
use crate::error::Result;
use crate::lattice::unit;
use crate::report::SuiteReport;
use crate::scalar::{ExactMatrix, QuarterInt, GR};

/// One checked identity: (family, ok, description on failure).
type Outcome = (&'static str, bool, String);

fn fmt_q4(n4: i64) -> String {
    QuarterInt::new(n4).to_string()
}

fn merge(report: &mut SuiteReport, outcomes: Vec<Vec<Outcome>>) -> BTreeMap<&'static str, u64> {
    let mut counts = BTreeMap::new();
    for (fam, ok, msg) in outcomes.into_iter().flatten() {
        *counts.entry(fam).or_insert(0u64) += 1;
        report.check(ok, || msg);
    }
    counts
}

impl FockSpace {
    /// Matrix of the product ops[0]·ops[1]···ops[last] on `src`, or None if an
    /// intermediate or the final bucket exceeds `limit`.
    pub fn compose(&self, ops: &[(Root, i64)], src: BucketKey, limit: i64) -> Result<Option<ExactMatrix>> {
        let mut key = src;
        let mut acc: Option<ExactMatrix> = None;
        for &(r, n4) in ops.iter().rev() {
            let t = self.vertex_target(r, QuarterInt::new(n4), key);
            if t.qweight > limit {
                return Ok(None);
            }
            let m = self.vertex_component(r, QuarterInt::new(n4), key)?;
            acc = Some(match acc {
                None => (*m).clone(),
                Some(a) => m.mul(&a),
            });
            key = t;
        }
        Ok(Some(acc.unwrap_or_else(|| ExactMatrix::identity(self.bucket(src).len()))))
    }

    fn op(&self, r: Root, n4: i64, src: BucketKey) -> Result<ExactMatrix> {
        Ok((*self.vertex_component(r, QuarterInt::new(n4), src)?).clone())
    }
}

/// x_α(m) = 0 for α ∈ {α1, α2}, m ∈ ½Z; x_{α2}(m) = ±x_{α1}(m) on 1/4+Z resp. 3/4+Z;
/// x_{α1+α2}(m) = 0 for m ∉ Z.
pub fn check_linear_relations(fs: &FockSpace, cutoff: i64) -> SuiteReport {
    let mut rep = SuiteReport::new("relations", "linear relations among vertex operators");
    let buckets = buckets_upto(cutoff);
    let outcomes: Vec<Vec<Outcome>> = buckets
        .par_iter()
        .map(|&src| {
            let mut out = Vec::new();
            for n4 in (src.qweight - cutoff)..=src.qweight {
                let m1 = fs.op(Root::A1, n4, src);
                let m2 = fs.op(Root::A2, n4, src);
                let m12 = fs.op(Root::A12, n4, src);
                let (Ok(m1), Ok(m2), Ok(m12)) = (m1, m2, m12) else {
                    out.push(("evaluation", false, format!("cutoff overflow at {src:?}, n={}", fmt_q4(n4))));
                    continue;
                };
                let at = || format!("bucket {src:?}, m={}", fmt_q4(n4));
                match n4.rem_euclid(4) {
                    0 | 2 => {
                        out.push(("alpha_half_integer_zero", m1.is_zero() && m2.is_zero(), format!("x_a1/x_a2 nonzero, {}", at())));
                    }
                    1 => out.push(("a2_eq_a1_on_1/4", m2 == m1, format!("x_a2 != x_a1, {}", at()))),
                    _ => out.push(("a2_eq_minus_a1_on_3/4", m2 == m1.scale(&GR::int(-1)), format!("x_a2 != -x_a1, {}", at()))),
                }
                if n4.rem_euclid(4) != 0 {
                    out.push(("a12_nonintegral_zero", m12.is_zero(), format!("x_a1+a2 nonzero, {}", at())));
                }
            }
            out
        })
        .collect();
    let counts = merge(&mut rep, outcomes);
    rep.set("cutoff", cutoff);
    rep.set("families", counts);
    rep
}

/// Coefficient c with [x_a(m), x_b(n)] = c·x_{α1+α2}(m+n), from the reconciled bracket table.
pub fn bracket_coefficient(a: Root, m4: i64, b: Root, n4: i64) -> GR {
    let odd = |k: i64| k.rem_euclid(2) == 1;
    if a == Root::A12 || b == Root::A12 || !odd(m4) || !odd(n4) {
        return GR::zero();
    }
    // κ(m) = −(i/4)(i^{−4m} − (−i)^{−4m})
    let kappa = &(&GR::frac(-1, 4) * &GR::i()) * &(&unit(-m4) - &unit(m4));
    match (a, b) {
        (Root::A1, Root::A2) => GR::frac(1, 2),
        (Root::A2, Root::A1) => GR::frac(-1, 2),
        (Root::A1, Root::A1) => kappa,
        _ => -&kappa,
    }
}

/// Bracket table against operator commutators.
pub fn check_brackets(fs: &FockSpace, cutoff: i64, max4: i64) -> SuiteReport {
    let mut rep = SuiteReport::new("brackets", "bracket table");
    let gens: Vec<(Root, i64)> = Root::ALL.iter().flat_map(|&r| (-max4..=max4).map(move |n| (r, n))).collect();
    let mut pairs = Vec::new();
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i..] {
            pairs.push((a, b));
        }
    }
    let buckets = buckets_upto(cutoff);
    let outcomes: Vec<Vec<Outcome>> = buckets
        .par_iter()
        .map(|&src| {
            let mut out = Vec::new();
            for &((a, m4), (b, n4)) in &pairs {
                let ab = fs.compose(&[(a, m4), (b, n4)], src, cutoff);
                let ba = fs.compose(&[(b, n4), (a, m4)], src, cutoff);
                let (Ok(Some(ab)), Ok(Some(ba))) = (ab, ba) else { continue };
                let lhs = ab.sub(&ba);
                let c = bracket_coefficient(a, m4, b, n4);
                let rhs = if c.is_zero() {
                    ExactMatrix::zeros(lhs.rows, lhs.cols)
                } else {
                    match fs.op(Root::A12, m4 + n4, src) {
                        Ok(z) => z.scale(&c),
                        Err(_) => continue,
                    }
                };
                let fam = if a == Root::A12 || b == Root::A12 { "central" } else { "bracket" };
                out.push((
                    fam,
                    lhs == rhs,
                    format!("[{}({}), {}({})] on {src:?}", a.name(), fmt_q4(m4), b.name(), fmt_q4(n4)),
                ));
            }
            out
        })
        .collect();
    let counts = merge(&mut rep, outcomes);
    rep.set("cutoff", cutoff);
    rep.set("max_abs_4n", max4);
    rep.set("families", counts);
    rep
}

fn max_in_class(bound: i64, residue: i64, modulus: i64) -> i64 {
    bound - (bound - residue).rem_euclid(modulus)
}

struct QuadCtx<'a> {
    fs: &'a FockSpace,
    cutoff: i64,
    src: BucketKey,
}

impl QuadCtx<'_> {
    fn prod(&self, ops: &[(Root, i64)]) -> Option<ExactMatrix> {
        self.fs.compose(ops, self.src, self.cutoff).ok().flatten()
    }

    /// Σ_{n1+n2 = −t−½} φ(n2)[x_a(n1+½)x_b(n2) + s·x_a(n1)x_b(n2+½)] over n1 ∈ [lo, hi].
    fn pair_sum(&self, a: Root, b: Root, t4: i64, lo: i64, hi: i64, s: i64, phased: bool) -> Option<ExactMatrix> {
        let mut acc: Option<ExactMatrix> = None;
        let mut n1 = lo;
        while n1 <= hi {
            let n2 = -t4 - 2 - n1;
            let first = self.prod(&[(a, n1 + 2), (b, n2)])?;
            let second = self.prod(&[(a, n1), (b, n2 + 2)])?;
            let mut term = first.add(&second.scale(&GR::int(s)));
            if phased {
                term = term.scale(&unit(-n2));
            }
            acc = Some(match acc {
                None => term,
                Some(x) => x.add(&term),
            });
            n1 += 2;
        }
        acc
    }
}

/// The five quadratic families annihilate every vector of each admissible bucket.
///
/// A bucket (c, l) is admissible for (family, t) when every term of the window
/// n_i ≤ B (x(n)v = 0 beyond B) has representable intermediates. Terms outside
/// the window vanish on v, which is spot-checked one step past the edge.
pub fn check_quadratic_relations(fs: &FockSpace, cutoff: i64, t4max: i64) -> SuiteReport {
    let mut rep = SuiteReport::new("quadratic", "quadratic relations");
    let buckets = buckets_upto(cutoff);
    let results: Vec<(Vec<Outcome>, u64, Option<String>)> = buckets
        .par_iter()
        .map(|&src| {
            let ctx = QuadCtx { fs, cutoff, src };
            let (c, l) = (src.charge, src.qweight);
            let bu = l - (c + 1) * (c + 1);
            let bz = l - (c + 2) * (c + 2);
            let mut out: Vec<Outcome> = Vec::new();
            let mut literal_nonzero = 0u64;
            let mut literal_example = None;
            let u_hi = max_in_class(bu, 1, 2);
            let z_hi = max_in_class(bz, 0, 4);
            let at = |fam: &str, t4: i64| format!("{fam} t={} on {src:?}", fmt_q4(t4));

            // R_j, R_{1;2}, R_{2;1}: t ∈ ½Z
            let mut t4 = -2 - 2 * u_hi;
            t4 += t4.rem_euclid(2);
            while t4 <= t4max {
                let lo = -t4 - 2 - u_hi;
                if lo <= u_hi && l + t4 + (u_hi + 2).max(0) <= cutoff {
                    for (name, a, b, s, phased) in [
                        ("R_1", Root::A1, Root::A1, 1, false),
                        ("R_2", Root::A2, Root::A2, 1, false),
                        ("R_1;2", Root::A1, Root::A2, -1, true),
                        ("R_2;1", Root::A2, Root::A1, -1, true),
                    ] {
                        match ctx.pair_sum(a, b, t4, lo, u_hi, s, phased) {
                            Some(m) => out.push((name, m.is_zero(), at(name, t4))),
                            None => out.push((name, false, format!("unrepresentable {}", at(name, t4)))),
                        }
                        let edge = u_hi + 2;
                        if let Some(m) = ctx.pair_sum(a, b, t4, edge, edge, s, phased) {
                            out.push(("window_edge", m.is_zero(), format!("edge {}", at(name, t4))));
                        }
                    }
                    for (name, a, b) in [("R_1;2 literal", Root::A1, Root::A2), ("R_2;1 literal", Root::A2, Root::A1)] {
                        if let Some(m) = ctx.pair_sum(a, b, t4, lo, u_hi, -1, false) {
                            if !m.is_zero() {
                                literal_nonzero += 1;
                                literal_example.get_or_insert_with(|| at(name, t4));
                            }
                        }
                    }
                }
                t4 += 2;
            }

            // R_{1,2}: t ∈ Z, Σ z(m1) z(m2)
            let mut t4 = -2 * z_hi;
            while t4 <= t4max {
                let lo = -t4 - z_hi;
                if lo <= z_hi && l + t4 + z_hi.max(0) <= cutoff {
                    let mut acc: Option<ExactMatrix> = None;
                    let mut ok = true;
                    let mut m1 = lo;
                    while m1 <= z_hi {
                        match ctx.prod(&[(Root::A12, m1), (Root::A12, -t4 - m1)]) {
                            Some(m) => acc = Some(acc.map_or(m.clone(), |x| x.add(&m))),
                            None => ok = false,
                        }
                        m1 += 4;
                    }
                    let zero = ok && acc.is_some_and(|m| m.is_zero());
                    out.push(("R_12", zero, at("R_12", t4)));
                    if let Some(m) = ctx.prod(&[(Root::A12, z_hi + 4), (Root::A12, -t4 - z_hi - 4)]) {
                        out.push(("window_edge", m.is_zero(), format!("edge {}", at("R_12", t4))));
                    }
                }
                t4 += 4;
            }

            // R_{1,2;j}: t ∈ 1/4 + ½Z, Σ z(m) x_j(n)
            let mut t4 = -z_hi - u_hi;
            while t4 <= t4max {
                let lo = -t4 - u_hi;
                let lo = lo + (lo.rem_euclid(4) != 0) as i64 * (4 - lo.rem_euclid(4));
                if lo <= z_hi && l + t4 + z_hi.max(0) <= cutoff {
                    for (name, r) in [("R_12;1", Root::A1), ("R_12;2", Root::A2)] {
                        let mut acc: Option<ExactMatrix> = None;
                        let mut ok = true;
                        let mut m = lo;
                        while m <= z_hi {
                            match ctx.prod(&[(Root::A12, m), (r, -t4 - m)]) {
                                Some(x) => acc = Some(acc.map_or(x.clone(), |y| y.add(&x))),
                                None => ok = false,
                            }
                            m += 4;
                        }
                        let zero = ok && acc.is_some_and(|m| m.is_zero());
                        out.push((name, zero, at(name, t4)));
                        if let Some(x) = ctx.prod(&[(Root::A12, z_hi + 4), (r, -t4 - z_hi - 4)]) {
                            out.push(("window_edge", x.is_zero(), format!("edge {}", at(name, t4))));
                        }
                    }
                }
                t4 += 2;
            }
            (out, literal_nonzero, literal_example)
        })
        .collect();
    let mut literal_nonzero = 0;
    let mut literal_example = None;
    let mut outcomes = Vec::new();
    for (o, n, ex) in results {
        outcomes.push(o);
        literal_nonzero += n;
        if literal_example.is_none() {
            literal_example = ex;
        }
    }
    let counts = merge(&mut rep, outcomes);
    rep.set("cutoff", cutoff);
    rep.set("t_max", fmt_q4(t4max));
    rep.set("families", counts);
    rep.set("mixed_literal_nonzero", literal_nonzero);
    rep.set("mixed_literal_example", literal_example);
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_table_values() {
        assert_eq!(bracket_coefficient(Root::A1, -1, Root::A1, -3), GR::frac(1, 2));
        assert_eq!(bracket_coefficient(Root::A1, -3, Root::A1, -1), GR::frac(-1, 2));
        assert_eq!(bracket_coefficient(Root::A1, -1, Root::A2, -3), GR::frac(1, 2));
        assert_eq!(bracket_coefficient(Root::A2, -1, Root::A2, -3), GR::frac(-1, 2));
        assert!(bracket_coefficient(Root::A12, -4, Root::A1, -1).is_zero());
    }

    #[test]
    fn small_suites_pass() {
        let fs = FockSpace::new(12);
        let r = check_linear_relations(&fs, 12);
        assert!(r.pass, "{}", r.summary());
        let r = check_brackets(&fs, 12, 8);
        assert!(r.pass, "{}", r.summary());
        let r = check_quadratic_relations(&fs, 12, 24);
        assert!(r.pass, "{}", r.summary());
        assert!(r.checked > 0);
    }
}
