//! Principal subspace W_L^T: bucket bases, graded dimension and theorem-level checks.

mod checks;
mod section6;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::fock::{BucketKey, FockSpace, FockVector, Root};
use crate::scalar::{Echelon, QuarterInt};

pub use checks::{check_exact_sequence, check_monomial_basis, check_oracle, check_presentation, check_recursion};
pub use section6::{check_section6, Section6Config};

/// Number of partitions of n into exactly m pairwise distinct odd parts, by enumeration.
pub fn partition_oracle(m: u32, n: u32) -> u64 {
    fn rec(m: u32, n: u32, max: u32) -> u64 {
        if m == 0 {
            return (n == 0) as u64;
        }
        let mut count = 0;
        let mut p = 1;
        while p <= max.min(n) {
            count += rec(m - 1, n - p, p.saturating_sub(2));
            p += 2;
        }
        count
    }
    rec(m, n, n)
}

/// dim (W_L^T)_{k,l} for 0 ≤ l ≤ cutoff, 0 ≤ k ≤ l.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedTable {
    pub cutoff: i64,
    pub entries: BTreeMap<(i64, i64), usize>,
}

impl GradedTable {
    pub fn dim(&self, k: i64, l: i64) -> usize {
        if k < 0 || l < 0 {
            return 0;
        }
        self.entries.get(&(k, l)).copied().unwrap_or(0)
    }
}

/// Basis of one bucket of W, kept in reduced echelon form over the Fock bucket coordinates.
#[derive(Clone)]
pub struct BucketBasis {
    pub key: BucketKey,
    pub echelon: Echelon,
    pub vectors: Vec<FockVector>,
}

impl BucketBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
}

pub struct PrincipalSubspace {
    pub cutoff: i64,
    pub buckets: BTreeMap<(i64, i64), BucketBasis>,
}

impl PrincipalSubspace {
    pub fn get(&self, k: i64, l: i64) -> Option<&BucketBasis> {
        self.buckets.get(&(k, l))
    }

    pub fn dim(&self, k: i64, l: i64) -> usize {
        self.get(k, l).map_or(0, BucketBasis::dim)
    }

    /// Whether a vector of bucket (k, l) lies in W.
    pub fn contains(&self, fs: &FockSpace, k: i64, l: i64, v: &FockVector) -> bool {
        if v.is_zero() {
            return true;
        }
        match self.get(k, l) {
            Some(b) => b.echelon.contains(&fs.bucket(b.key).coords(v)),
            None => false,
        }
    }
}

fn build_bucket(fs: &FockSpace, w: &BTreeMap<(i64, i64), BucketBasis>, k: i64, l: i64) -> Result<BucketBasis> {
    let key = BucketKey::new(k, l);
    let fb = fs.bucket(key);
    let mut ech = Echelon::new(fb.len());
    let push = |v: FockVector, ech: &mut Echelon| {
        if ech.rank() < fb.len() && !v.is_zero() {
            ech.insert(fb.coords(&v));
        }
    };
    if k == 0 && l == 0 {
        push(FockVector::vacuum(), &mut ech);
    }
    // u(−q/4)·W(k−1, l−q), q odd
    let mut q = 1;
    while q <= l {
        if let Some(src) = w.get(&(k - 1, l - q)) {
            for v in &src.vectors {
                push(fs.vertex(Root::A1, QuarterInt::new(-q), v)?, &mut ech);
            }
        }
        q += 2;
    }
    // z(−p)·W(k−2, l−4p)
    let mut p = 1;
    while 4 * p <= l {
        if let Some(src) = w.get(&(k - 2, l - 4 * p)) {
            for v in &src.vectors {
                push(fs.vertex(Root::A12, QuarterInt::new(-4 * p), v)?, &mut ech);
            }
        }
        p += 1;
    }
    let vectors = ech.rows().map(|r| fb.vector(r)).collect();
    Ok(BucketBasis { key, echelon: ech, vectors })
}

/// W_L^T = U(n̄₋)·1 by closure under negative modes, bucket by bucket.
#[allow(non_snake_case)]
pub fn build_W(fs: &FockSpace, cutoff: i64) -> Result<PrincipalSubspace> {
    let mut w: BTreeMap<(i64, i64), BucketBasis> = BTreeMap::new();
    for l in 0..=cutoff {
        let ks: Vec<i64> = (0..=l).filter(|k| k * k <= l && (l - k * k) % 2 == 0).collect();
        let built: Vec<Result<BucketBasis>> = ks.par_iter().map(|&k| build_bucket(fs, &w, k, l)).collect();
        for b in built {
            let b = b?;
            w.insert((b.key.charge, b.key.qweight), b);
        }
    }
    Ok(PrincipalSubspace { cutoff, buckets: w })
}

pub fn graded_dimension(w: &PrincipalSubspace) -> GradedTable {
    let mut entries = BTreeMap::new();
    for l in 0..=w.cutoff {
        for k in 0..=l {
            entries.insert((k, l), w.dim(k, l));
        }
    }
    GradedTable { cutoff: w.cutoff, entries }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_examples() {
        assert_eq!(partition_oracle(2, 8), 2);
        assert_eq!(partition_oracle(0, 0), 1);
        assert_eq!(partition_oracle(1, 6), 0);
        assert_eq!(partition_oracle(3, 9), 1);
        assert_eq!(partition_oracle(1, 7), 1);
    }

    #[test]
    fn small_table() {
        let fs = FockSpace::new(12);
        let w = build_W(&fs, 12).unwrap();
        let t = graded_dimension(&w);
        assert_eq!(t.dim(0, 0), 1);
        assert_eq!(t.dim(1, 1), 1);
        assert_eq!(t.dim(2, 2), 0);
        assert_eq!(t.dim(2, 4), 1);
        assert_eq!(t.dim(2, 8), 2);
        for l in 1..=12 {
            assert_eq!(t.dim(1, l), (l % 2) as usize);
        }
    }
}
