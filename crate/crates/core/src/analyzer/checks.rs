use rayon::prelude::*;
use serde::Serialize;

use super::{partition_oracle, GradedTable, PrincipalSubspace};
use crate::envelope::{ideal_bucket, pbw_basis, Evaluator};
use crate::fock::{BucketKey, FockSpace, FockVector, Root};
use crate::report::SuiteReport;
use crate::scalar::{Echelon, ExactMatrix, QuarterInt, GR};

/// Table against the distinct-odd-parts oracle.
pub fn check_oracle(t: &GradedTable) -> SuiteReport {
    let mut rep = SuiteReport::new("oracle", "distinct odd parts partition identity");
    for (&(k, l), &d) in &t.entries {
        let o = partition_oracle(k as u32, l as u32);
        rep.check(d as u64 == o, || format!("({k},{l}): dim {d}, oracle {o}"));
    }
    rep.set("cutoff", t.cutoff);
    rep
}

/// dim_{k,l} = dim_{k,l−2k} + dim_{k−1,l−2k+1}.
pub fn check_recursion(t: &GradedTable) -> SuiteReport {
    let mut rep = SuiteReport::new("recursion", "graded dimension recursion");
    for &(k, l) in t.entries.keys() {
        if (k, l) == (0, 0) {
            rep.check(t.dim(0, 0) == 1, || "dim(0,0) != 1".into());
            continue;
        }
        let lhs = t.dim(k, l);
        let rhs = t.dim(k, l - 2 * k) + t.dim(k - 1, l - 2 * k + 1);
        rep.check(lhs == rhs, || format!("({k},{l}): {lhs} != {rhs}"));
    }
    rep.set("cutoff", t.cutoff);
    rep
}

fn rank_of(vs: &[Vec<GR>], dim: usize) -> usize {
    let mut e = Echelon::new(dim);
    for v in vs {
        e.insert(v.clone());
    }
    e.rank()
}

/// 0 → W(k−1, l−2k+1) → W(k, l) → W(k, l−2k) → 0 via e_{α1} and Δ, on every bucket.
pub fn check_exact_sequence(fs: &FockSpace, w: &PrincipalSubspace, cutoff: i64) -> SuiteReport {
    let mut rep = SuiteReport::new("exactness", "short exact sequence e_a1, delta");
    let keys: Vec<(i64, i64)> = w.buckets.keys().copied().filter(|&(_, l)| l <= cutoff).collect();
    let results: Vec<Vec<(bool, String)>> = keys
        .par_iter()
        .map(|&(k, l)| {
            let mut out = Vec::new();
            let mid = BucketKey::new(k, l);
            let fb = fs.bucket(mid);
            let dim_mid = w.dim(k, l);
            // e_{α1} from (k−1, l−2k+1)
            let src = w.get(k - 1, l - 2 * k + 1);
            let e_imgs: Vec<FockVector> = src.map_or(vec![], |b| b.vectors.iter().map(|v| fs.e_alpha1(v)).collect());
            let e_in_w = e_imgs.iter().all(|v| w.contains(fs, k, l, v));
            out.push((e_in_w, format!("({k},{l}): e_a1 image leaves W")));
            let e_rank = rank_of(&e_imgs.iter().map(|v| fb.coords(v)).collect::<Vec<_>>(), fb.len());
            let dim_src = w.dim(k - 1, l - 2 * k + 1);
            out.push((e_rank == dim_src, format!("({k},{l}): e_a1 rank {e_rank} < {dim_src}")));
            // Δ to (k, l−2k)
            let tgt = BucketKey::new(k, l - 2 * k);
            let tb = fs.bucket(tgt);
            let mid_vecs = w.get(k, l).map_or(vec![], |b| b.vectors.clone());
            let d_imgs: Vec<FockVector> = mid_vecs.iter().map(|v| fs.delta(v)).collect();
            let d_in_w = d_imgs.iter().all(|v| w.contains(fs, k, l - 2 * k, v));
            out.push((d_in_w, format!("({k},{l}): delta image leaves W")));
            let d_rank = rank_of(&d_imgs.iter().map(|v| tb.coords(v)).collect::<Vec<_>>(), tb.len());
            let dim_tgt = w.dim(k, l - 2 * k);
            out.push((d_rank == dim_tgt, format!("({k},{l}): delta rank {d_rank} < {dim_tgt}")));
            // Δ∘e = 0 and im = ker by dimension
            let comp_zero = e_imgs.iter().all(|v| fs.delta(v).is_zero());
            out.push((comp_zero, format!("({k},{l}): delta o e_a1 != 0")));
            out.push((dim_mid == d_rank + e_rank, format!("({k},{l}): dim {dim_mid} != {d_rank} + {e_rank}")));
            out
        })
        .collect();
    for (ok, msg) in results.into_iter().flatten() {
        rep.check(ok, || msg);
    }
    rep.set("cutoff", cutoff);
    rep
}

#[derive(Serialize)]
struct PresentationRow {
    charge: i64,
    qweight: i64,
    pbw: usize,
    ideal_rank: usize,
    w_dim: usize,
}

/// PBW count − rank π(I_Λ) = dim W and f_Λ(I_Λ) = 0 per bucket.
pub fn check_presentation(fs: &FockSpace, w: &PrincipalSubspace, cutoff_p: i64) -> SuiteReport {
    let mut rep = SuiteReport::new("presentation", "presentation of W by the quadratic ideal");
    let mut keys = Vec::new();
    for l in 0..=cutoff_p {
        for k in 0..=l {
            keys.push((k, l));
        }
    }
    let results: Vec<(PresentationRow, Vec<(bool, String)>)> = keys
        .par_iter()
        .map(|&(k, l)| {
            let mut out = Vec::new();
            let basis = pbw_basis(k, l);
            let rows = ideal_bucket(k, l, 0);
            let d = w.dim(k, l);
            out.push((basis.len() == rows.len() + d, format!("({k},{l}): pbw {} - rank {} != dim {d}", basis.len(), rows.len())));
            if !rows.is_empty() {
                let fb = fs.bucket(BucketKey::new(k, l));
                let mut ev = Evaluator::new(fs);
                match ev.columns(&basis, &fb) {
                    Ok(cols) => {
                        let f = ExactMatrix::from_columns(
                            fb.len(),
                            &cols
                                .iter()
                                .map(|c| c.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect())
                                .collect::<Vec<_>>(),
                        );
                        let killed = rows.iter().all(|r| f.apply(r).iter().all(GR::is_zero));
                        out.push((killed, format!("({k},{l}): f_Lambda(ideal) != 0")));
                    }
                    Err(e) => out.push((false, format!("({k},{l}): {e}"))),
                }
            }
            (PresentationRow { charge: k, qweight: l, pbw: basis.len(), ideal_rank: rows.len(), w_dim: d }, out)
        })
        .collect();
    let mut table = Vec::new();
    for (row, outs) in results {
        for (ok, msg) in outs {
            rep.check(ok, || msg);
        }
        if row.pbw > 0 {
            table.push(row);
        }
    }
    rep.set("cutoff", cutoff_p);
    rep.set("buckets", table);
    rep
}

#[derive(Serialize)]
struct MonomialRow {
    charge: i64,
    qweight: i64,
    candidates: usize,
    rank: usize,
    w_dim: usize,
}

/// Exploratory: u(−q_1/4)···u(−q_s/4)·1 over distinct odd q_1 < ··· < q_s as a basis of W.
pub fn check_monomial_basis(fs: &FockSpace, w: &PrincipalSubspace, cutoff: i64) -> SuiteReport {
    let mut rep = SuiteReport::new("monomial_basis", "distinct-mode monomial basis (exploratory)");
    let mut rows = Vec::new();
    let mut all_bases = true;
    for (&(k, l), _) in w.buckets.iter().filter(|(&(_, l), _)| l <= cutoff) {
        let fb = fs.bucket(BucketKey::new(k, l));
        let mut cands = Vec::new();
        for parts in distinct_odd(k as usize, l) {
            let mut v = FockVector::vacuum();
            for &q in parts.iter().rev() {
                v = fs.vertex(Root::A1, QuarterInt::new(-q), &v).expect("within cutoff");
            }
            cands.push(fb.coords(&v));
        }
        let r = rank_of(&cands, fb.len());
        let d = w.dim(k, l);
        rep.tick();
        all_bases &= r == cands.len() && r == d;
        rows.push(MonomialRow { charge: k, qweight: l, candidates: cands.len(), rank: r, w_dim: d });
    }
    rep.set("cutoff", cutoff);
    rep.set("is_basis_everywhere", all_bases);
    rep.set("buckets", rows);
    rep
}

/// Strictly increasing sequences of m odd positive integers summing to n.
fn distinct_odd(m: usize, n: i64) -> Vec<Vec<i64>> {
    fn rec(m: usize, n: i64, min: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if m == 0 {
            if n == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut p = min;
        while p <= n {
            cur.push(p);
            rec(m - 1, n - p, p + 2, cur, out);
            cur.pop();
            p += 2;
        }
    }
    let mut out = Vec::new();
    rec(m, n, 1, &mut Vec::new(), &mut out);
    out
}
