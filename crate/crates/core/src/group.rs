//! Central extensions L̂, L̂_ν, the lift ν̂, the character τ and the action on U_T ≅ C[L/N].

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{unit, Lattice, LatticeVector};
use crate::report::SuiteReport;
use crate::scalar::GR;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Ext {
    /// L̂, multiplication through ε0.
    HatL,
    /// L̂_ν, multiplication through ε_C.
    HatLnu,
}

/// `i^phase · e_vec` in the extension `ext`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ExtElement {
    pub phase: u8,
    pub vec: LatticeVector,
    pub ext: Ext,
}

impl ExtElement {
    pub fn new(phase: i64, vec: LatticeVector, ext: Ext) -> Self {
        ExtElement { phase: phase.rem_euclid(4) as u8, vec, ext }
    }

    /// Section element e_vec.
    pub fn section(vec: LatticeVector, ext: Ext) -> Self {
        Self::new(0, vec, ext)
    }

    pub fn identity(ext: Ext) -> Self {
        Self::new(0, LatticeVector::ZERO, ext)
    }
}

/// Coset vectors: charge c stands for the coset cα1 + N.
pub type CosetVector = BTreeMap<i64, GR>;

/// Group layer with the cached value of τ on e_{α1−α2}.
#[derive(Clone, Debug)]
pub struct TwistedGroup {
    pub lat: Lattice,
    tau_mu_exp: u8,
}

impl Default for TwistedGroup {
    fn default() -> Self {
        TwistedGroup::new(Lattice::a2())
    }
}

impl TwistedGroup {
    pub fn new(lat: Lattice) -> Self {
        let mut g = TwistedGroup { lat, tau_mu_exp: 0 };
        g.tau_mu_exp = g.solve_tau_generator();
        g
    }

    fn eps_exp(&self, ext: Ext, a: LatticeVector, b: LatticeVector) -> u8 {
        match ext {
            Ext::HatL => self.lat.eps0_exp(a, b),
            Ext::HatLnu => self.lat.eps_c_exp(a, b),
        }
    }

    pub fn ext_mul(&self, a: &ExtElement, b: &ExtElement) -> Result<ExtElement> {
        if a.ext != b.ext {
            return Err(Error::MixedExtensions);
        }
        let e = self.eps_exp(a.ext, a.vec, b.vec);
        Ok(ExtElement::new(a.phase as i64 + b.phase as i64 + e as i64, a.vec + b.vec, a.ext))
    }

    fn mul(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        self.ext_mul(a, b).expect("same extension")
    }

    /// (i^p e_a)^{-1} = i^{-p} ε(a,−a)^{-1} e_{−a}.
    pub fn inverse(&self, a: &ExtElement) -> ExtElement {
        let e = self.eps_exp(a.ext, a.vec, -a.vec);
        ExtElement::new(-(a.phase as i64) - e as i64, -a.vec, a.ext)
    }

    pub fn pow(&self, a: &ExtElement, s: i64) -> ExtElement {
        let base = if s >= 0 { *a } else { self.inverse(a) };
        (0..s.unsigned_abs()).fold(ExtElement::identity(a.ext), |acc, _| self.mul(&acc, &base))
    }

    pub fn commutator(&self, a: &ExtElement, b: &ExtElement) -> Result<ExtElement> {
        let ab = self.ext_mul(a, b)?;
        let abi = self.mul(&ab, &self.inverse(a));
        Ok(self.mul(&abi, &self.inverse(b)))
    }

    /// ν̂(e_α) = ε0(α,α) i^{⟨α, α1+α2⟩} e_{να}, phases carried along.
    pub fn nu_hat(&self, a: &ExtElement) -> ExtElement {
        let v = a.vec;
        let e = self.lat.eps0_exp(v, v) as i64 + self.lat.gram(v, LatticeVector::ALPHA12);
        ExtElement::new(a.phase as i64 + e, self.lat.nu(v), a.ext)
    }

    pub fn nu_hat_pow(&self, a: &ExtElement, j: u32) -> ExtElement {
        (0..j).fold(*a, |acc, _| self.nu_hat(&acc))
    }

    /// Exponent of i in i^{−Σ_j ⟨ν^j a, a⟩/2}.
    pub fn tau_target_exp(&self, v: LatticeVector) -> u8 {
        let s = self.lat.orbit_pairing(v, v);
        debug_assert!(s % 2 == 0);
        (-s / 2).rem_euclid(4) as u8
    }

    /// τ(e_{α1−α2}) solved from τ(a ν̂(a)^{-1}) with a = e_{α1}.
    fn solve_tau_generator(&self) -> u8 {
        let a = ExtElement::section(LatticeVector::ALPHA1, Ext::HatLnu);
        let el = self.mul(&a, &self.inverse(&self.nu_hat(&a)));
        assert_eq!(el.vec, LatticeVector::MU, "a nu_hat(a)^-1 must lie over a1-a2");
        let target = self.tau_target_exp(LatticeVector::ALPHA1) as i64;
        // τ(i^p e_mu) = i^p τ(e_mu)
        (target - el.phase as i64).rem_euclid(4) as u8
    }

    pub fn tau_generator_exp(&self) -> u8 {
        self.tau_mu_exp
    }

    /// τ as an exponent of i.
    pub fn tau_exp(&self, a: &ExtElement) -> Result<u8> {
        if a.ext != Ext::HatLnu {
            return Err(Error::MixedExtensions);
        }
        if !self.lat.in_n(a.vec) {
            return Err(Error::NotInN(format!("{:?}", a.vec)));
        }
        let s = a.vec.m;
        let g = ExtElement::section(LatticeVector::MU, Ext::HatLnu);
        let p = self.pow(&g, s);
        debug_assert_eq!(p.vec, a.vec);
        // p = i^q e_{sμ}, τ(p) = τ(e_μ)^s
        let e = a.phase as i64 + s * self.tau_mu_exp as i64 - p.phase as i64;
        Ok(e.rem_euclid(4) as u8)
    }

    pub fn tau_character(&self, a: &ExtElement) -> Result<GR> {
        Ok(unit(self.tau_exp(a)? as i64))
    }

    /// `a · (e_{cα1} ⊗ 1)` as (exponent of i, new charge).
    ///
    /// The product i^p e_v, v = mα1 + nα2, is refactored as
    /// e_v = ε_C(c′α1, μ)^{-1} e_{c′α1} e_μ with c′ = m + n, μ = −n(α1 − α2),
    /// and e_μ acts through τ.
    pub fn coset_act(&self, a: &ExtElement, c: i64) -> Result<(u8, i64)> {
        if a.ext != Ext::HatLnu {
            return Err(Error::MixedExtensions);
        }
        let prod = self.mul(a, &ExtElement::section(LatticeVector::new(c, 0), Ext::HatLnu));
        let v = prod.vec;
        let cp = v.m + v.n;
        let mu = LatticeVector::new(-v.n, v.n);
        let eps = self.lat.eps_c_exp(LatticeVector::new(cp, 0), mu) as i64;
        let t = self.tau_exp(&ExtElement::section(mu, Ext::HatLnu))? as i64;
        Ok(((prod.phase as i64 - eps + t).rem_euclid(4) as u8, cp))
    }

    pub fn ut_action(&self, a: &ExtElement, v: &CosetVector) -> Result<CosetVector> {
        let mut out = CosetVector::new();
        for (c, x) in v {
            let (e, cp) = self.coset_act(a, *c)?;
            let y = x * &unit(e as i64);
            let slot = out.entry(cp).or_insert_with(GR::zero);
            *slot += &y;
        }
        out.retain(|_, x| !x.is_zero());
        Ok(out)
    }

    /// (α1+α2)(0) acts on coset c by c.
    pub fn charge_action(&self, v: &CosetVector) -> CosetVector {
        v.iter().map(|(c, x)| (*c, x * &GR::int(*c))).filter(|(_, x)| !x.is_zero()).collect()
    }
}

fn grid(radius: i64) -> Vec<LatticeVector> {
    let mut out = Vec::new();
    for m in -radius..=radius {
        for n in -radius..=radius {
            out.push(LatticeVector::new(m, n));
        }
    }
    out
}

/// Group-layer identities on lattice grids: cocycles, commutators, ν̂, τ and the U_T action.
///
/// `nu_hat_sq_minus_one_everywhere` records the literal claim ν̂² e_α = −e_α for
/// all α; the suite itself asserts ν̂² e_α = (−1)^{⟨α, α1+α2⟩} e_α.
pub fn check_group(g: &TwistedGroup, radius: i64) -> SuiteReport {
    let mut rep = SuiteReport::new("group", "central extensions, nu-hat and tau");
    let lat = &g.lat;
    let small = grid(radius.min(2));
    let wide = grid(radius);

    // cocycle identity, commutator recovery, symmetry properties
    for &a in &wide {
        for &b in &wide {
            let c0 = (lat.eps0_exp(a, b) as i64 - lat.eps0_exp(b, a) as i64).rem_euclid(4) as u8;
            rep.check(c0 == lat.c0_exp(a, b), || format!("eps0 commutator at {a:?},{b:?}"));
            let cc = (lat.eps_c_exp(a, b) as i64 - lat.eps_c_exp(b, a) as i64).rem_euclid(4) as u8;
            rep.check(cc == lat.c_exp(a, b), || format!("eps_C commutator at {a:?},{b:?}"));
            rep.check(lat.eps0_exp(a, b) == lat.eps0_exp(lat.nu(b), lat.nu(a)), || format!("eps0 nu-symmetry at {a:?},{b:?}"));
            rep.check(lat.eps0_exp(a, b) % 2 == 0, || format!("eps0^2 != 1 at {a:?},{b:?}"));
            rep.check(
                lat.c_exp(lat.nu(a), lat.nu(b)) == lat.c_exp(a, b) && lat.c0_exp(lat.nu(a), lat.nu(b)) == lat.c0_exp(a, b),
                || format!("commutator not nu-invariant at {a:?},{b:?}"),
            );
            for &c in &small {
                let lhs = lat.eps0_exp(a, b) as i64 + lat.eps0_exp(a + b, c) as i64;
                let rhs = lat.eps0_exp(a, b + c) as i64 + lat.eps0_exp(b, c) as i64;
                rep.check((lhs - rhs).rem_euclid(4) == 0, || format!("eps0 cocycle at {a:?},{b:?},{c:?}"));
                let add = |x: u8, y: u8| (x as i64 + y as i64).rem_euclid(4) as u8;
                rep.check(lat.c_exp(a + b, c) == add(lat.c_exp(a, c), lat.c_exp(b, c)), || format!("C not bilinear at {a:?},{b:?},{c:?}"));
            }
        }
        rep.check(lat.orbit_pairing(a, a) % 2 == 0, || format!("odd orbit pairing at {a:?}"));
    }

    // group axioms and ν̂ on both extensions
    let mut literal_sq = true;
    let mut literal_example = None;
    for ext in [Ext::HatL, Ext::HatLnu] {
        let elems: Vec<ExtElement> = small.iter().flat_map(|&v| (0..4).map(move |p| ExtElement::new(p, v, ext))).collect();
        let id = ExtElement::identity(ext);
        for a in &elems {
            rep.check(self_mul(g, a, &id) == *a && self_mul(g, &id, a) == *a, || format!("identity law at {a:?}"));
            rep.check(self_mul(g, a, &g.inverse(a)) == id, || format!("inverse law at {a:?}"));
            rep.check(g.nu_hat_pow(a, 4) == *a, || format!("nu_hat^4 != 1 at {a:?}"));
            let sq = g.nu_hat_pow(a, 2);
            let sign = 2 * lat.gram(a.vec, LatticeVector::ALPHA12);
            rep.check(sq == ExtElement::new(a.phase as i64 + sign, a.vec, ext), || format!("nu_hat^2 sign at {a:?}"));
            if sq != ExtElement::new(a.phase as i64 + 2, a.vec, ext) {
                literal_sq = false;
                literal_example.get_or_insert_with(|| format!("{:?}", a.vec));
            }
            for b in &elems {
                let ab = self_mul(g, a, b);
                rep.check(g.nu_hat(&ab) == self_mul(g, &g.nu_hat(a), &g.nu_hat(b)), || format!("nu_hat not multiplicative at {a:?},{b:?}"));
                if a.phase == 0 && b.phase == 0 {
                    for c in elems.iter().filter(|c| c.phase == 0) {
                        rep.check(
                            self_mul(g, &ab, c) == self_mul(g, a, &self_mul(g, b, c)),
                            || format!("associativity at {a:?},{b:?},{c:?}"),
                        );
                    }
                }
            }
        }
    }

    // τ: defining relation, multiplicativity along factorizations of sμ
    for &v in &small {
        let a = ExtElement::section(v, Ext::HatLnu);
        let el = self_mul(g, &a, &g.inverse(&g.nu_hat(&a)));
        rep.check(g.tau_exp(&el).ok() == Some(g.tau_target_exp(v)), || format!("tau relation at {v:?}"));
    }
    for s in -3..=3i64 {
        let whole = g.tau_exp(&ExtElement::section(LatticeVector::MU.scale(s), Ext::HatLnu));
        for a in -3..=3i64 {
            let x = ExtElement::section(LatticeVector::MU.scale(a), Ext::HatLnu);
            let y = ExtElement::section(LatticeVector::MU.scale(s - a), Ext::HatLnu);
            let xy = self_mul(g, &x, &y);
            // τ(e_{sμ}) = τ(x)τ(y)·ε_C(aμ, (s−a)μ)^{-1}
            let split = (g.tau_exp(&x).unwrap() as i64 + g.tau_exp(&y).unwrap() as i64 - xy.phase as i64).rem_euclid(4) as u8;
            rep.check(whole.as_ref().ok() == Some(&split), || format!("tau factorization s={s}, a={a}"));
        }
    }

    // U_T action is a group action
    let elems: Vec<ExtElement> = small.iter().map(|&v| ExtElement::section(v, Ext::HatLnu)).collect();
    for a in &elems {
        for b in &elems {
            let ab = self_mul(g, a, b);
            for c in -3..=3 {
                let v: CosetVector = [(c, GR::one())].into();
                let lhs = g.ut_action(&ab, &v);
                let rhs = g.ut_action(b, &v).and_then(|w| g.ut_action(a, &w));
                rep.check(lhs.is_ok() && lhs == rhs, || format!("U_T action at {a:?},{b:?}, coset {c}"));
            }
        }
    }

    rep.set("radius", radius);
    rep.set("tau_generator_exp", g.tau_generator_exp());
    rep.set("nu_hat_sq_minus_one_everywhere", literal_sq);
    rep.set("nu_hat_sq_counterexample", literal_example);
    rep
}

fn self_mul(g: &TwistedGroup, a: &ExtElement, b: &ExtElement) -> ExtElement {
    g.ext_mul(a, b).expect("same extension")
}

#[cfg(test)]
mod tests {
    use super::*;
    use LatticeVector as V;

    fn grp() -> TwistedGroup {
        TwistedGroup::default()
    }

    #[test]
    fn mul_examples() {
        let g = grp();
        let e1 = ExtElement::section(V::ALPHA1, Ext::HatL);
        let e2 = ExtElement::section(V::ALPHA2, Ext::HatL);
        assert_eq!(g.ext_mul(&e1, &e2).unwrap(), ExtElement::new(0, V::ALPHA12, Ext::HatL));
        assert_eq!(g.ext_mul(&e2, &e1).unwrap(), ExtElement::new(2, V::ALPHA12, Ext::HatL));
        let f1 = ExtElement::section(V::ALPHA1, Ext::HatLnu);
        let f2 = ExtElement::section(V::ALPHA2, Ext::HatLnu);
        let c = g.commutator(&f1, &f2).unwrap();
        assert_eq!(c.vec, V::ZERO);
        assert_eq!(unit(c.phase as i64), g.lat.commutator_c(V::ALPHA1, V::ALPHA2));
        assert_eq!(g.ext_mul(&e1, &f1), Err(Error::MixedExtensions));
    }

    #[test]
    fn nu_hat_examples() {
        let g = grp();
        let a1 = ExtElement::section(V::ALPHA1, Ext::HatLnu);
        assert_eq!(g.nu_hat(&a1), ExtElement::new(1, V::ALPHA2, Ext::HatLnu));
        let a12 = ExtElement::section(V::ALPHA12, Ext::HatLnu);
        assert_eq!(g.nu_hat(&a12), a12);
        assert_eq!(g.nu_hat_pow(&a1, 2), ExtElement::new(2, V::ALPHA1, Ext::HatLnu));
    }

    #[test]
    fn tau_examples() {
        let g = grp();
        assert_eq!(g.tau_character(&ExtElement::new(1, V::ZERO, Ext::HatLnu)).unwrap(), GR::i());
        assert_eq!(g.tau_character(&ExtElement::section(V::MU, Ext::HatLnu)).unwrap(), GR::ints(0, -1));
        let t1 = g.tau_character(&ExtElement::section(V::MU, Ext::HatLnu)).unwrap();
        let t2 = g.tau_character(&ExtElement::section(V::MU.scale(2), Ext::HatLnu)).unwrap();
        let eps = g.lat.cocycle_eps_c(V::MU, V::MU);
        assert_eq!(t2, &(&t1 * &t1) * &eps.inverse().unwrap());
        assert!(g.tau_character(&ExtElement::section(V::ALPHA1, Ext::HatLnu)).is_err());
    }

    #[test]
    fn ut_examples() {
        let g = grp();
        let vac: CosetVector = [(0, GR::one())].into();
        let e1 = ExtElement::section(V::ALPHA1, Ext::HatLnu);
        assert_eq!(g.ut_action(&e1, &vac).unwrap(), [(1, GR::one())].into());
        let em = ExtElement::section(V::MU, Ext::HatLnu);
        let tau = g.tau_character(&em).unwrap();
        assert_eq!(g.ut_action(&em, &vac).unwrap(), [(0, tau)].into());
        let v: CosetVector = [(3, GR::one())].into();
        assert_eq!(g.charge_action(&v), [(3, GR::int(3))].into());
    }

    #[test]
    fn group_suite() {
        let r = check_group(&grp(), 3);
        assert!(r.pass, "{}", r.summary());
        assert_eq!(r.get("nu_hat_sq_minus_one_everywhere"), Some(&serde_json::Value::Bool(false)));
    }

    #[test]
    fn coset_phases_alpha1() {
        let g = grp();
        let e1 = ExtElement::section(V::ALPHA1, Ext::HatLnu);
        let got: Vec<_> = (0..4).map(|c| g.coset_act(&e1, c).unwrap()).collect();
        assert_eq!(got, vec![(0, 1), (3, 2), (2, 3), (1, 4)]);
    }
}
