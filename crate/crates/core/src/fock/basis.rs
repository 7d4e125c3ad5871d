use std::collections::BTreeMap;
use std::fmt;

use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::scalar::{QuarterInt, GR};

/// A Heisenberg mode of weight h/2 is stored as the half-unit `h`:
/// even `h` is the β0 mode h/2, odd `h` the β2 mode h/2.
pub type Parts = Vec<u8>;

/// Basis monomial of S(ĥ[ν]⁻) ⊗ C[L/N]; parts sorted descending.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FockMonomial {
    pub charge: i64,
    pub parts: Parts,
}

impl FockMonomial {
    pub fn new(charge: i64, mut parts: Parts) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        FockMonomial { charge, parts }
    }

    pub fn vacuum() -> Self {
        FockMonomial { charge: 0, parts: Vec::new() }
    }

    pub fn coset(charge: i64) -> Self {
        FockMonomial { charge, parts: Vec::new() }
    }

    pub fn half_sum(&self) -> i64 {
        self.parts.iter().map(|&h| h as i64).sum()
    }

    /// 4 × weight without the global 1/16.
    pub fn qweight(&self) -> i64 {
        self.charge * self.charge + 2 * self.half_sum()
    }

    pub fn bucket(&self) -> BucketKey {
        BucketKey::new(self.charge, self.qweight())
    }

    /// Integer modes of β0, descending.
    pub fn b0modes(&self) -> Vec<i64> {
        self.parts.iter().filter(|h| *h % 2 == 0).map(|&h| h as i64 / 2).collect()
    }

    /// Half-odd modes of β2, descending.
    pub fn b2modes(&self) -> Vec<QuarterInt> {
        self.parts.iter().filter(|h| *h % 2 == 1).map(|&h| QuarterInt::new(2 * h as i64)).collect()
    }
}

impl fmt::Display for FockMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        for &h in &self.parts {
            let m = QuarterInt::new(-2 * h as i64);
            if h % 2 == 0 {
                s.push_str(&format!("b0({m})"));
            } else {
                s.push_str(&format!("b2({m})"));
            }
        }
        write!(f, "{}[{}]", if s.is_empty() { "1".to_string() } else { s }, self.charge)
    }
}

impl fmt::Debug for FockMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// (charge, quarter-weight) grading key.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct BucketKey {
    pub charge: i64,
    pub qweight: i64,
}

impl BucketKey {
    pub fn new(charge: i64, qweight: i64) -> Self {
        BucketKey { charge, qweight }
    }

    /// Half-unit total of the Heisenberg part, if the bucket is nonempty.
    pub fn half_sum(&self) -> Option<i64> {
        let r = self.qweight - self.charge * self.charge;
        (r >= 0 && r % 2 == 0).then_some(r / 2)
    }
}

/// Nonempty buckets with qweight ≤ `max_l`, ordered by (qweight, charge).
pub fn buckets_upto(max_l: i64) -> Vec<BucketKey> {
    let mut out = Vec::new();
    for l in 0..=max_l {
        for c in -l..=l {
            if c * c <= l && (l - c * c) % 2 == 0 {
                out.push(BucketKey::new(c, l));
            }
        }
    }
    out
}

/// All partitions of `n` into parts ≤ `max`, descending lexicographic order.
pub fn partitions(n: usize, max: usize) -> Vec<Parts> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(n: usize, max: usize, cur: &mut Parts, out: &mut Vec<Parts>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=max.min(n)).rev() {
            cur.push(p as u8);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    rec(n, max, &mut cur, &mut out);
    out
}

/// Number of partitions of `n`.
pub fn partition_count(n: usize) -> usize {
    let mut p = vec![0usize; n + 1];
    p[0] = 1;
    for k in 1..=n {
        for m in k..=n {
            p[m] += p[m - k];
        }
    }
    p[n]
}

/// Ordered basis of a bucket with an index.
#[derive(Clone, Debug)]
pub struct Bucket {
    pub key: BucketKey,
    pub basis: Vec<FockMonomial>,
    index: FxHashMap<Parts, usize>,
}

impl Bucket {
    pub fn new(key: BucketKey) -> Self {
        let basis: Vec<FockMonomial> = match key.half_sum() {
            Some(n) => partitions(n as usize, n as usize)
                .into_iter()
                .map(|p| FockMonomial { charge: key.charge, parts: p })
                .collect(),
            None => Vec::new(),
        };
        let index = basis.iter().enumerate().map(|(i, m)| (m.parts.clone(), i)).collect();
        Bucket { key, basis, index }
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn index_of(&self, m: &FockMonomial) -> Option<usize> {
        if m.charge != self.key.charge {
            return None;
        }
        self.index.get(&m.parts).copied()
    }

    pub fn index_of_parts(&self, p: &[u8]) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Dense coordinates of a vector supported in this bucket.
    pub fn coords(&self, v: &FockVector) -> Vec<GR> {
        let mut out = vec![GR::zero(); self.len()];
        for (m, x) in v.iter() {
            let i = self.index_of(m).expect("vector outside bucket");
            out[i] = x.clone();
        }
        out
    }

    pub fn vector(&self, coords: &[GR]) -> FockVector {
        let mut v = FockVector::zero();
        for (i, x) in coords.iter().enumerate() {
            if !x.is_zero() {
                v.add_term(self.basis[i].clone(), x);
            }
        }
        v
    }
}

/// Finite linear combination of Fock monomials.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct FockVector {
    terms: FxHashMap<FockMonomial, GR>,
}

impl FockVector {
    pub fn zero() -> Self {
        FockVector::default()
    }

    pub fn monomial(m: FockMonomial) -> Self {
        Self::term(m, GR::one())
    }

    pub fn term(m: FockMonomial, x: GR) -> Self {
        let mut v = Self::zero();
        v.add_term(m, &x);
        v
    }

    pub fn vacuum() -> Self {
        Self::monomial(FockMonomial::vacuum())
    }

    pub fn add_term(&mut self, m: FockMonomial, x: &GR) {
        if x.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += x;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(x.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, o: &FockVector, s: &GR) {
        for (m, x) in o.iter() {
            self.add_term(m.clone(), &(x * s));
        }
    }

    pub fn add(&mut self, o: &FockVector) {
        for (m, x) in o.iter() {
            self.add_term(m.clone(), x);
        }
    }

    pub fn sub(&mut self, o: &FockVector) {
        for (m, x) in o.iter() {
            self.add_term(m.clone(), &(-x));
        }
    }

    pub fn scaled(&self, s: &GR) -> FockVector {
        let mut v = FockVector::zero();
        v.add_scaled(self, s);
        v
    }

    pub fn minus(&self, o: &FockVector) -> FockVector {
        let mut v = self.clone();
        v.sub(o);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, m: &FockMonomial) -> GR {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FockMonomial, &GR)> {
        self.terms.iter()
    }

    pub fn sorted(&self) -> BTreeMap<FockMonomial, GR> {
        self.terms.iter().map(|(m, x)| (m.clone(), x.clone())).collect()
    }

    /// Common bucket of all terms, if homogeneous and nonzero.
    pub fn bucket(&self) -> Option<BucketKey> {
        let mut keys = self.terms.keys().map(FockMonomial::bucket);
        let k = keys.next()?;
        keys.all(|x| x == k).then_some(k)
    }

    /// If `self = s·o` for a scalar `s`, return it.
    pub fn ratio_to(&self, o: &FockVector) -> Option<GR> {
        if self.is_zero() && o.is_zero() {
            return Some(GR::one());
        }
        let (m, y) = o.iter().next()?;
        let s = &self.get(m) / y;
        (self.minus(&o.scaled(&s))).is_zero().then_some(s)
    }
}

impl fmt::Debug for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sorted().iter().map(|(m, x)| format!("({x}){m}")).collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bucket_examples() {
        let b = Bucket::new(BucketKey::new(0, 0));
        assert_eq!(b.basis, vec![FockMonomial::vacuum()]);
        let b = Bucket::new(BucketKey::new(1, 1));
        assert_eq!(b.basis, vec![FockMonomial::coset(1)]);
        assert_eq!(Bucket::new(BucketKey::new(0, 8)).len(), 5);
        assert!(Bucket::new(BucketKey::new(1, 2)).is_empty());
        assert!(Bucket::new(BucketKey::new(2, 3)).is_empty());
    }

    #[test]
    fn monomial_weights() {
        let m = FockMonomial::new(2, vec![1, 4, 3]);
        assert_eq!(m.parts, vec![4, 3, 1]);
        assert_eq!(m.qweight(), 4 + 16);
        assert_eq!(m.b0modes(), vec![2]);
        assert_eq!(m.b2modes(), vec![QuarterInt::new(6), QuarterInt::new(2)]);
        for b in Bucket::new(BucketKey::new(-3, 21)).basis {
            assert_eq!(b.qweight(), 21);
        }
    }

    #[test]
    fn partition_counts() {
        for n in 0..15 {
            assert_eq!(partitions(n, n).len(), partition_count(n));
        }
        assert_eq!(partition_count(20), 627);
    }
}
