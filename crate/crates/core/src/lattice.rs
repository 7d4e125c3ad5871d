//! The A2 root lattice with the diagram involution ν taken with period 4.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{Q, GR};

/// `m·α1 + n·α2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
pub struct LatticeVector {
    pub m: i64,
    pub n: i64,
}

impl LatticeVector {
    pub const ZERO: LatticeVector = LatticeVector { m: 0, n: 0 };
    pub const ALPHA1: LatticeVector = LatticeVector { m: 1, n: 0 };
    pub const ALPHA2: LatticeVector = LatticeVector { m: 0, n: 1 };
    pub const ALPHA12: LatticeVector = LatticeVector { m: 1, n: 1 };
    /// α1 − α2, the generator of N.
    pub const MU: LatticeVector = LatticeVector { m: 1, n: -1 };

    pub const fn new(m: i64, n: i64) -> Self {
        LatticeVector { m, n }
    }

    pub fn scale(self, s: i64) -> Self {
        LatticeVector::new(self.m * s, self.n * s)
    }

    pub fn to_h(self) -> RationalHVector {
        RationalHVector::new(Q::int(self.m), Q::int(self.n))
    }
}

impl Add for LatticeVector {
    type Output = LatticeVector;
    fn add(self, o: Self) -> Self {
        LatticeVector::new(self.m + o.m, self.n + o.n)
    }
}

impl Sub for LatticeVector {
    type Output = LatticeVector;
    fn sub(self, o: Self) -> Self {
        LatticeVector::new(self.m - o.m, self.n - o.n)
    }
}

impl Neg for LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> Self {
        LatticeVector::new(-self.m, -self.n)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}a1{:+}a2", self.m, self.n)
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

/// Element of the rational span of L, coordinates in the basis α1, α2.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct RationalHVector {
    pub a: Q,
    pub b: Q,
}

impl RationalHVector {
    pub fn new(a: Q, b: Q) -> Self {
        RationalHVector { a, b }
    }

    pub fn add(&self, o: &Self) -> Self {
        RationalHVector::new(&self.a + &o.a, &self.b + &o.b)
    }

    pub fn scale(&self, s: &Q) -> Self {
        RationalHVector::new(&self.a * s, &self.b * s)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

/// ν, its period and the primitive root η.
#[derive(Clone, Debug)]
pub struct TwistData {
    pub k: u32,
    pub eta: GR,
    /// Column j is the image of the j-th basis vector.
    pub nu: [[i64; 2]; 2],
}

/// Lattice data kept as matrices so the API is not tied to A2 internally.
#[derive(Clone, Debug)]
pub struct Lattice {
    pub gram: [[i64; 2]; 2],
    pub twist: TwistData,
}

impl Default for Lattice {
    fn default() -> Self {
        Lattice::a2()
    }
}

/// Phases in ⟨i⟩ are handled as exponents mod 4.
pub fn unit(k: i64) -> GR {
    GR::i_pow(k)
}

impl Lattice {
    pub fn a2() -> Self {
        Lattice {
            gram: [[2, -1], [-1, 2]],
            twist: TwistData { k: 4, eta: GR::i(), nu: [[0, 1], [1, 0]] },
        }
    }

    pub fn gram(&self, x: LatticeVector, y: LatticeVector) -> i64 {
        let g = &self.gram;
        x.m * (g[0][0] * y.m + g[0][1] * y.n) + x.n * (g[1][0] * y.m + g[1][1] * y.n)
    }

    pub fn gram_h(&self, x: &RationalHVector, y: &RationalHVector) -> Q {
        let g = |i: usize, j: usize| Q::int(self.gram[i][j]);
        let r0 = &(&g(0, 0) * &y.a) + &(&g(0, 1) * &y.b);
        let r1 = &(&g(1, 0) * &y.a) + &(&g(1, 1) * &y.b);
        &(&x.a * &r0) + &(&x.b * &r1)
    }

    pub fn nu(&self, x: LatticeVector) -> LatticeVector {
        let t = &self.twist.nu;
        LatticeVector::new(t[0][0] * x.m + t[0][1] * x.n, t[1][0] * x.m + t[1][1] * x.n)
    }

    pub fn nu_pow(&self, x: LatticeVector, j: u32) -> LatticeVector {
        (0..j % self.twist.k).fold(x, |acc, _| self.nu(acc))
    }

    fn nu_h(&self, x: &RationalHVector) -> RationalHVector {
        let t = &self.twist.nu;
        let c = |v: i64| Q::int(v);
        RationalHVector::new(
            &(&c(t[0][0]) * &x.a) + &(&c(t[0][1]) * &x.b),
            &(&c(t[1][0]) * &x.a) + &(&c(t[1][1]) * &x.b),
        )
    }

    /// Eigenprojection onto the η^p eigenspace: (1/k) Σ_j η^{−pj} ν^j.
    /// Only real-valued results occur for A2; anything else is a domain error.
    pub fn project(&self, x: &RationalHVector, p: i64) -> Result<RationalHVector> {
        let k = self.twist.k as i64;
        let (mut ra, mut rb) = (GR::zero(), GR::zero());
        let mut cur = x.clone();
        for j in 0..k {
            let w = self.twist.eta.pow(-p * j)?;
            ra += &(&w * &GR::real(cur.a.clone()));
            rb += &(&w * &GR::real(cur.b.clone()));
            cur = self.nu_h(&cur);
        }
        let inv = Q::new(1, k);
        if !ra.im.is_zero() || !rb.im.is_zero() {
            return Err(Error::Domain("non-real eigenprojection".into()));
        }
        Ok(RationalHVector::new(&ra.re * &inv, &rb.re * &inv))
    }

    pub fn project_lv(&self, x: LatticeVector, p: i64) -> RationalHVector {
        self.project(&x.to_h(), p).expect("A2 projections are rational")
    }

    /// C0(a,b) = (−1)^{⟨a,b⟩}, as an exponent of i.
    pub fn c0_exp(&self, a: LatticeVector, b: LatticeVector) -> u8 {
        (2 * self.gram(a, b)).rem_euclid(4) as u8
    }

    pub fn commutator_c0(&self, a: LatticeVector, b: LatticeVector) -> GR {
        unit(self.c0_exp(a, b) as i64)
    }

    /// C(a,b) = Π_j (−η^j)^{⟨ν^j a, b⟩}, as an exponent of i (η = i).
    pub fn c_exp(&self, a: LatticeVector, b: LatticeVector) -> u8 {
        let k = self.twist.k;
        let mut e = 0i64;
        for j in 0..k {
            // −η^j = i^{2+j}
            e += (2 + j as i64) * self.gram(self.nu_pow(a, j), b);
        }
        e.rem_euclid(4) as u8
    }

    pub fn commutator_c(&self, a: LatticeVector, b: LatticeVector) -> GR {
        unit(self.c_exp(a, b) as i64)
    }

    /// ε0(a,b) = (−1)^{n·r} for a = mα1 + nα2, b = rα1 + sα2.
    pub fn eps0_exp(&self, a: LatticeVector, b: LatticeVector) -> u8 {
        (2 * (a.n * b.m).rem_euclid(2)) as u8
    }

    pub fn cocycle_eps0(&self, a: LatticeVector, b: LatticeVector) -> GR {
        unit(self.eps0_exp(a, b) as i64)
    }

    /// ε_C(a,b) = (−i)^{−⟨νa,b⟩} ε0(a,b).
    pub fn eps_c_exp(&self, a: LatticeVector, b: LatticeVector) -> u8 {
        // (−i)^{−x} = i^{x}
        (self.gram(self.nu(a), b) + self.eps0_exp(a, b) as i64).rem_euclid(4) as u8
    }

    pub fn cocycle_eps_c(&self, a: LatticeVector, b: LatticeVector) -> GR {
        unit(self.eps_c_exp(a, b) as i64)
    }

    /// Σ_j ⟨ν^j a, b⟩.
    pub fn orbit_pairing(&self, a: LatticeVector, b: LatticeVector) -> i64 {
        (0..self.twist.k).map(|j| self.gram(self.nu_pow(a, j), b)).sum()
    }

    /// C_N(a,b) = η^{Σ_j ⟨j ν^j a, b⟩}, as an exponent of i.
    pub fn c_n_exp(&self, a: LatticeVector, b: LatticeVector) -> u8 {
        (0..self.twist.k)
            .map(|j| j as i64 * self.gram(self.nu_pow(a, j), b))
            .sum::<i64>()
            .rem_euclid(4) as u8
    }

    pub fn in_n(&self, a: LatticeVector) -> bool {
        self.project_lv(a, 0).is_zero()
    }
}

/// Generators of N, M, R together with the scan evidence.
#[derive(Clone, Debug, Serialize)]
pub struct SublatticeReport {
    pub n_generator: LatticeVector,
    pub m_generator: LatticeVector,
    pub r_generator: LatticeVector,
    pub verified: bool,
    pub failures: Vec<String>,
}

/// N = M = R = Z(α1 − α2), checked on the grid |m|,|n| ≤ `radius`.
pub fn sublattices_nmr(lat: &Lattice, radius: i64) -> SublatticeReport {
    let gen = LatticeVector::MU;
    let mut failures = Vec::new();
    let on_line = |v: LatticeVector| v.m + v.n == 0;
    for m in -radius..=radius {
        for n in -radius..=radius {
            let v = LatticeVector::new(m, n);
            if lat.in_n(v) != on_line(v) {
                failures.push(format!("N membership differs at {v:?}"));
            }
            // (1 − ν)v must land in N and be a multiple of the generator
            let w = v - lat.nu(v);
            if !on_line(w) {
                failures.push(format!("(1-nu){v:?} not in Z(a1-a2)"));
            }
        }
    }
    // M is generated by (1−ν)α1 = α1 − α2
    if LatticeVector::ALPHA1 - lat.nu(LatticeVector::ALPHA1) != gen {
        failures.push("(1-nu)a1 != a1-a2".into());
    }
    // R = {a ∈ N : C_N(a, N) = 1}
    for s in -radius..=radius {
        for t in -radius..=radius {
            if lat.c_n_exp(gen.scale(s), gen.scale(t)) != 0 {
                failures.push(format!("C_N({s}mu,{t}mu) != 1"));
            }
        }
    }
    if lat.in_n(LatticeVector::ALPHA12) {
        failures.push("a1+a2 in N".into());
    }
    SublatticeReport { n_generator: gen, m_generator: gen, r_generator: gen, verified: failures.is_empty(), failures }
}

#[cfg(test)]
mod tests {
    use super::*;
    use LatticeVector as V;

    #[test]
    fn gram_examples() {
        let l = Lattice::a2();
        assert_eq!(l.gram(V::ALPHA1, V::ALPHA1), 2);
        assert_eq!(l.gram(V::ALPHA1, V::ALPHA2), -1);
        assert_eq!(l.gram(V::ALPHA12, V::ALPHA12), 2);
    }

    #[test]
    fn projection_examples() {
        let l = Lattice::a2();
        let half = Q::new(1, 2);
        assert_eq!(l.project_lv(V::ALPHA1, 0), RationalHVector::new(half.clone(), half.clone()));
        assert_eq!(l.project_lv(V::ALPHA1, 2), RationalHVector::new(half.clone(), -&half));
        assert!(l.project_lv(V::ALPHA1, 1).is_zero());
        assert!(l.project_lv(V::ALPHA1, 3).is_zero());
    }

    #[test]
    fn commutator_examples() {
        let l = Lattice::a2();
        assert_eq!(l.commutator_c0(V::ALPHA1, V::ALPHA2), GR::int(-1));
        assert_eq!(l.commutator_c0(V::ALPHA1, V::ALPHA1), GR::one());
        assert_eq!(l.commutator_c0(V::ALPHA1, V::ALPHA12), GR::int(-1));
        assert_eq!(l.commutator_c(V::ALPHA1, V::ALPHA1), GR::one());
        assert_eq!(l.commutator_c(V::ALPHA1, V::ALPHA2), GR::int(-1));
        assert_eq!(l.commutator_c(V::ALPHA1, -V::ALPHA1), GR::one());
    }

    #[test]
    fn cocycle_examples() {
        let l = Lattice::a2();
        assert_eq!(l.cocycle_eps0(V::ALPHA1, V::ALPHA2), GR::one());
        assert_eq!(l.cocycle_eps0(V::ALPHA2, V::ALPHA1), GR::int(-1));
        assert_eq!(l.cocycle_eps0(V::ALPHA1, -V::ALPHA1), GR::one());
        assert_eq!(l.cocycle_eps_c(V::ALPHA1, V::ALPHA2), GR::int(-1));
        assert_eq!(l.cocycle_eps_c(V::ALPHA2, V::ALPHA1), GR::one());
        let ratio = &l.cocycle_eps_c(V::ALPHA1, V::ALPHA2) / &l.cocycle_eps_c(V::ALPHA2, V::ALPHA1);
        assert_eq!(ratio, l.commutator_c(V::ALPHA1, V::ALPHA2));
    }

    #[test]
    fn nmr() {
        let l = Lattice::a2();
        let r = sublattices_nmr(&l, 4);
        assert!(r.verified, "{:?}", r.failures);
        assert_eq!(r.n_generator, V::new(1, -1));
        assert_eq!(l.c_n_exp(V::MU, V::MU), 0);
        assert!(!l.in_n(V::ALPHA12));
    }
}
