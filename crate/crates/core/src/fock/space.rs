use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock, RwLock};

use rustc_hash::FxHashMap;
use serde::Serialize;

use super::eseries::{exp_series, translation_terms};
use super::basis::{Bucket, BucketKey, FockMonomial, FockVector, Parts};
use crate::error::{Error, Result};
use crate::group::{Ext, ExtElement, TwistedGroup};
use crate::lattice::{unit, Lattice, LatticeVector, RationalHVector};
use crate::scalar::{ExactMatrix, QuarterInt, Q, GR};

/// Roots whose twisted vertex operators span n̄[ν̂].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub enum Root {
    A1,
    A2,
    A12,
}

impl Root {
    pub const ALL: [Root; 3] = [Root::A1, Root::A2, Root::A12];

    pub fn vec(self) -> LatticeVector {
        match self {
            Root::A1 => LatticeVector::ALPHA1,
            Root::A2 => LatticeVector::ALPHA2,
            Root::A12 => LatticeVector::ALPHA12,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Root::A1 => "a1",
            Root::A2 => "a2",
            Root::A12 => "a1+a2",
        }
    }

    fn idx(self) -> usize {
        self as usize
    }
}

/// Heisenberg directions: β0 = α1 + α2 (integer modes), β2 = α1 − α2 (half-odd modes).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Beta {
    B0,
    B2,
}

/// Everything about e_α needed to expand Y(e_α, x).
#[derive(Clone, Debug)]
pub struct RootData {
    pub root: Root,
    pub norm: i64,
    pub sigma: GR,
    /// k^{−⟨α,α⟩/2} σ(α)
    pub prefactor: GR,
    /// ⟨P0 α, α1⟩: x^{α_(0)} on coset c contributes c times this.
    pub p0_alpha1: Q,
    /// ⟨α_(0), α_(0)⟩/2 − ⟨α,α⟩/2
    pub shift: Q,
    /// E⁻ mode coefficients s_h = ⟨α, β_h⟩/⟨β_h, β_h⟩, indexed by h mod 2.
    pub s: [Q; 2],
    /// E⁺ translation constants ⟨α, β_h⟩, indexed by h mod 2.
    pub a: [Q; 2],
    pub charge_shift: i64,
}

type Table = Arc<Vec<(Parts, Q)>>;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum OpKey {
    Vertex(Root, i64),
    Delta,
    EAlpha1,
}

/// The truncated twisted Fock space V_L^T with its operators.
pub struct FockSpace {
    pub group: TwistedGroup,
    pub cutoff: i64,
    roots: [RootData; 3],
    /// translation constants ⟨λ1, β_h⟩ for Δ^T_c
    lambda_a: [Q; 2],
    /// ⟨α1+α2, P0 α1⟩ and ⟨(α1+α2)/2, P0 α1⟩
    delta_phase_per_charge: Q,
    delta_xexp_per_charge: Q,
    eminus: [Vec<OnceLock<Table>>; 3],
    buckets: RwLock<FxHashMap<BucketKey, Arc<Bucket>>>,
    mats: RwLock<FxHashMap<(OpKey, BucketKey), Arc<ExactMatrix>>>,
}

pub(crate) fn merge_desc(a: &[u8], b: &[u8]) -> Parts {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] >= b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl FockSpace {
    pub fn new(cutoff: i64) -> Self {
        Self::with_group(TwistedGroup::default(), cutoff)
    }

    pub fn with_group(group: TwistedGroup, cutoff: i64) -> Self {
        let lat = group.lat.clone();
        let beta0 = lat.project_lv(LatticeVector::ALPHA1, 0).scale(&Q::int(2));
        let beta2 = lat.project_lv(LatticeVector::ALPHA1, 2).scale(&Q::int(2));
        let betas = [beta0, beta2];
        let roots = Root::ALL.map(|r| Self::root_data(&lat, &group, r, &betas));
        let lambda1 = RationalHVector::new(Q::new(2, 3), Q::new(1, 3));
        let lambda_a = [lat.gram_h(&lambda1, &betas[0]), lat.gram_h(&lambda1, &betas[1])];
        let p0a1 = lat.project_lv(LatticeVector::ALPHA1, 0);
        let a12 = LatticeVector::ALPHA12.to_h();
        let delta_phase_per_charge = lat.gram_h(&a12, &p0a1);
        let delta_xexp_per_charge = lat.gram_h(&a12.scale(&Q::new(1, 2)), &p0a1);
        let max_deg = (cutoff.max(0) / 2 + 2) as usize;
        let mk = || (0..=max_deg).map(|_| OnceLock::new()).collect::<Vec<_>>();
        FockSpace {
            group,
            cutoff,
            roots,
            lambda_a,
            delta_phase_per_charge,
            delta_xexp_per_charge,
            eminus: [mk(), mk(), mk()],
            buckets: RwLock::new(FxHashMap::default()),
            mats: RwLock::new(FxHashMap::default()),
        }
    }

    fn root_data(lat: &Lattice, group: &TwistedGroup, root: Root, betas: &[RationalHVector; 2]) -> RootData {
        let v = root.vec();
        let vh = v.to_h();
        let norm = lat.gram(v, v);
        let k = lat.twist.k as i64;
        // σ(α) = Π_{0<j<k/2} (1 − η^{−j})^{⟨ν^j α, α⟩} · 2^{⟨ν^{k/2} α, α⟩/2}
        let mut sigma = GR::one();
        for j in 1..(k + 1) / 2 {
            if 2 * j == k {
                continue;
            }
            let base = &GR::one() - &lat.twist.eta.pow(-j).expect("unit");
            sigma = &sigma * &base.pow(lat.gram(lat.nu_pow(v, j as u32), v)).expect("nonzero");
        }
        if k % 2 == 0 {
            let e = lat.gram(lat.nu_pow(v, (k / 2) as u32), v);
            assert!(e % 2 == 0, "odd exponent of 2 in sigma");
            sigma = &sigma * &GR::int(2).pow(e / 2).expect("nonzero");
        }
        let prefactor = &GR::int(k).pow(-norm / 2).expect("nonzero") * &sigma;
        let p0 = lat.project_lv(v, 0);
        let p0_alpha1 = lat.gram_h(&p0, &LatticeVector::ALPHA1.to_h());
        let shift = &(&lat.gram_h(&p0, &p0) / &Q::int(2)) - &Q::new(norm, 2);
        let s = [
            &lat.gram_h(&vh, &betas[0]) / &lat.gram_h(&betas[0], &betas[0]),
            &lat.gram_h(&vh, &betas[1]) / &lat.gram_h(&betas[1], &betas[1]),
        ];
        let a = [lat.gram_h(&vh, &betas[0]), lat.gram_h(&vh, &betas[1])];
        let (_, c1) = group.coset_act(&ExtElement::section(v, Ext::HatLnu), 0).expect("coset action");
        RootData { root, norm, sigma, prefactor, p0_alpha1, shift, s, a, charge_shift: c1 }
    }

    pub fn root_data_of(&self, r: Root) -> &RootData {
        &self.roots[r.idx()]
    }

    pub fn sigma(&self, r: Root) -> GR {
        self.roots[r.idx()].sigma.clone()
    }

    fn build_eminus(&self, r: Root, deg: usize) -> Vec<(Parts, Q)> {
        exp_series(&self.roots[r.idx()].s, deg)
    }

    /// Coefficient of x^{deg/2} in E⁻(−α, x), as (parts, coefficient).
    pub fn eminus(&self, r: Root, deg: usize) -> Table {
        let slots = &self.eminus[r.idx()];
        match slots.get(deg) {
            Some(cell) => cell.get_or_init(|| Arc::new(self.build_eminus(r, deg))).clone(),
            None => Arc::new(self.build_eminus(r, deg)),
        }
    }

    pub fn bucket(&self, key: BucketKey) -> Arc<Bucket> {
        if let Some(b) = self.buckets.read().expect("lock").get(&key) {
            return b.clone();
        }
        let b = Arc::new(Bucket::new(key));
        self.buckets.write().expect("lock").entry(key).or_insert(b).clone()
    }

    fn check_cutoff(&self, charge: i64, qweight: i64) -> Result<()> {
        if qweight > self.cutoff {
            return Err(Error::CutoffOverflow { charge, qweight, cutoff: self.cutoff });
        }
        Ok(())
    }

    /// Bucket reached from `src` by x_α(n).
    pub fn vertex_target(&self, r: Root, n: QuarterInt, src: BucketKey) -> BucketKey {
        let rd = &self.roots[r.idx()];
        BucketKey::new(src.charge + rd.charge_shift, src.qweight - n.q - 4 + 2 * rd.norm)
    }

    /// Heisenberg mode β(n) for n ≠ 0.
    pub fn heis_act(&self, b: Beta, n: QuarterInt, v: &FockVector) -> Result<FockVector> {
        let ok = match b {
            Beta::B0 => n.is_integer(),
            Beta::B2 => n.is_half_odd(),
        };
        if !ok || n.q == 0 {
            return Err(Error::Parity(format!("{b:?}({n})")));
        }
        let h = (n.q.abs() / 2) as u8;
        let mut out = FockVector::zero();
        if n.q < 0 {
            for (m, x) in v.iter() {
                let nm = FockMonomial::new(m.charge, merge_desc(&m.parts, &[h]));
                self.check_cutoff(nm.charge, nm.qweight())?;
                out.add_term(nm, x);
            }
        } else {
            let lat = &self.group.lat;
            let beta = match b {
                Beta::B0 => LatticeVector::ALPHA12,
                Beta::B2 => LatticeVector::MU,
            };
            // ⟨β,β⟩ · n per matched mode
            let f = &Q::int(lat.gram(beta, beta)) * &Q::new(n.q, 4);
            for (m, x) in v.iter() {
                let k = m.parts.iter().filter(|&&p| p == h).count();
                if k == 0 {
                    continue;
                }
                let mut parts = m.parts.clone();
                let pos = parts.iter().position(|&p| p == h).expect("present");
                parts.remove(pos);
                out.add_term(FockMonomial { charge: m.charge, parts }, &x.scale(&(&f * &Q::int(k as i64))));
            }
        }
        Ok(out)
    }

    /// x_α^ν̂(n) applied to a vector.
    pub fn vertex(&self, r: Root, n: QuarterInt, v: &FockVector) -> Result<FockVector> {
        let rd = &self.roots[r.idx()];
        let mut by_charge: BTreeMap<i64, Vec<(&FockMonomial, &GR)>> = BTreeMap::new();
        for (m, x) in v.iter() {
            by_charge.entry(m.charge).or_default().push((m, x));
        }
        let mut out = FockVector::zero();
        for (c, terms) in by_charge {
            let (ph, c2) = self.group.coset_act(&ExtElement::section(r.vec(), Ext::HatLnu), c)?;
            let a4 = &(&(&Q::int(c) * &rd.p0_alpha1) + &rd.shift) * &Q::int(4);
            assert!(a4.is_integer(), "non-quarter x exponent");
            let a4: i64 = a4.numer().try_into().expect("small");
            // exponent: a4 + 2d − 2e = −4n − 2⟨α,α⟩
            let k4 = -n.q - 2 * rd.norm - a4;
            if k4 % 2 != 0 {
                continue;
            }
            let half = k4 / 2; // d − e
            let mut plus: FxHashMap<(i64, Parts), GR> = FxHashMap::default();
            for (m, x) in terms {
                let s = m.half_sum();
                if s + half < 0 {
                    continue;
                }
                self.check_cutoff(c2, c2 * c2 + 2 * (s + half))?;
                translation_terms(&m.parts, &rd.a, |e, rest, coef| {
                    if e + half < 0 {
                        return;
                    }
                    let y = x.scale(coef);
                    let slot = plus.entry((e, rest)).or_default();
                    *slot += &y;
                });
            }
            let mut acc: FxHashMap<Parts, GR> = FxHashMap::default();
            for ((e, rest), coef) in plus {
                if coef.is_zero() {
                    continue;
                }
                let table = self.eminus(r, (e + half) as usize);
                for (q, b) in table.iter() {
                    let key = merge_desc(&rest, q);
                    let slot = acc.entry(key).or_default();
                    *slot += &coef.scale(b);
                }
            }
            let f = &rd.prefactor * &unit(ph as i64);
            for (p, x) in acc {
                if !x.is_zero() {
                    out.add_term(FockMonomial { charge: c2, parts: p }, &(&x * &f));
                }
            }
        }
        Ok(out)
    }

    /// Δ^T_c: the x⁰ coefficient of i^{α1+α2} x^{(α1+α2)/2} E⁺(−λ1, x).
    pub fn delta(&self, v: &FockVector) -> FockVector {
        let mut out = FockVector::zero();
        for (m, x) in v.iter() {
            let c = Q::int(m.charge);
            let ph = &c * &self.delta_phase_per_charge;
            let e2 = &(&c * &self.delta_xexp_per_charge) * &Q::int(2);
            if !e2.is_integer() || !ph.is_integer() || e2.signum() < 0 {
                continue;
            }
            let want: i64 = e2.numer().try_into().expect("small");
            let ph: i64 = ph.numer().try_into().expect("small");
            let f = x * &unit(ph);
            translation_terms(&m.parts, &self.lambda_a, |e, rest, coef| {
                if e == want {
                    out.add_term(FockMonomial { charge: m.charge, parts: rest }, &f.scale(coef));
                }
            });
        }
        out
    }

    /// e_{α1} acting on the coset factor.
    pub fn e_alpha1(&self, v: &FockVector) -> FockVector {
        let g = ExtElement::section(LatticeVector::ALPHA1, Ext::HatLnu);
        let mut out = FockVector::zero();
        for (m, x) in v.iter() {
            let (ph, c2) = self.group.coset_act(&g, m.charge).expect("coset action");
            out.add_term(FockMonomial { charge: c2, parts: m.parts.clone() }, &(x * &unit(ph as i64)));
        }
        out
    }

    fn target_of(&self, op: OpKey, src: BucketKey) -> BucketKey {
        match op {
            OpKey::Vertex(r, n4) => self.vertex_target(r, QuarterInt::new(n4), src),
            OpKey::Delta => BucketKey::new(src.charge, src.qweight - 2 * src.charge),
            OpKey::EAlpha1 => BucketKey::new(src.charge + 1, src.qweight + 2 * src.charge + 1),
        }
    }

    /// Matrix of an operator from bucket `src` to its target bucket, cached.
    pub fn matrix(&self, op: OpKey, src: BucketKey) -> Result<Arc<ExactMatrix>> {
        if let Some(m) = self.mats.read().expect("lock").get(&(op, src)) {
            return Ok(m.clone());
        }
        let tkey = self.target_of(op, src);
        let sb = self.bucket(src);
        let tb = self.bucket(tkey);
        if !tb.is_empty() {
            self.check_cutoff(tkey.charge, tkey.qweight)?;
        }
        let mut cols = Vec::with_capacity(sb.len());
        for m in &sb.basis {
            let v = FockVector::monomial(m.clone());
            let img = match op {
                OpKey::Vertex(r, n4) => self.vertex(r, QuarterInt::new(n4), &v)?,
                OpKey::Delta => self.delta(&v),
                OpKey::EAlpha1 => self.e_alpha1(&v),
            };
            let mut col = Vec::with_capacity(img.len());
            for (t, x) in img.iter() {
                let i = tb.index_of(t).ok_or_else(|| Error::Domain(format!("{op:?} left bucket {tkey:?}")))?;
                col.push((i, x.clone()));
            }
            col.sort_by_key(|(i, _)| *i);
            cols.push(col);
        }
        let mat = Arc::new(ExactMatrix::from_columns(tb.len(), &cols));
        self.mats.write().expect("lock").insert((op, src), mat.clone());
        Ok(mat)
    }

    pub fn vertex_component(&self, r: Root, n: QuarterInt, src: BucketKey) -> Result<Arc<ExactMatrix>> {
        self.matrix(OpKey::Vertex(r, n.q), src)
    }

    pub fn e_alpha1_op(&self, src: BucketKey) -> Result<Arc<ExactMatrix>> {
        self.matrix(OpKey::EAlpha1, src)
    }

    pub fn delta_t_constant(&self, src: BucketKey) -> Result<Arc<ExactMatrix>> {
        self.matrix(OpKey::Delta, src)
    }

    pub fn clear_cache(&self) {
        self.mats.write().expect("lock").clear();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp() -> FockSpace {
        FockSpace::new(24)
    }

    fn q(x: i64) -> QuarterInt {
        QuarterInt::new(x)
    }

    #[test]
    fn sigma_values() {
        let s = sp();
        assert_eq!(s.sigma(Root::A1), GR::ints(1, -1));
        assert_eq!(s.sigma(Root::A2), GR::ints(1, -1));
        assert_eq!(s.sigma(Root::A12), GR::ints(0, 4));
    }

    #[test]
    fn vertex_on_vacuum() {
        let s = sp();
        let v = s.vertex(Root::A1, q(-1), &FockVector::vacuum()).unwrap();
        let want = FockVector::term(FockMonomial::coset(1), GR::new(Q::new(1, 4), Q::new(-1, 4)));
        assert_eq!(v, want);
        assert!(s.vertex(Root::A1, q(-2), &FockVector::vacuum()).unwrap().is_zero());
        assert!(s.vertex(Root::A12, q(-3), &FockVector::vacuum()).unwrap().is_zero());
    }

    #[test]
    fn heisenberg_examples() {
        let s = sp();
        let vac = FockVector::vacuum();
        let up = s.heis_act(Beta::B0, q(-4), &vac).unwrap();
        assert_eq!(s.heis_act(Beta::B0, q(4), &up).unwrap(), vac.scaled(&GR::int(2)));
        let up = s.heis_act(Beta::B2, q(-2), &vac).unwrap();
        assert_eq!(s.heis_act(Beta::B2, q(2), &up).unwrap(), vac.scaled(&GR::int(3)));
        assert!(s.heis_act(Beta::B0, q(4), &vac).unwrap().is_zero());
        assert!(s.heis_act(Beta::B0, q(2), &vac).is_err());
    }

    #[test]
    fn delta_examples() {
        let s = sp();
        let vac = FockVector::vacuum();
        assert_eq!(s.delta(&vac), vac);
        let a = s.vertex(Root::A1, q(-3), &vac).unwrap();
        let b = s.vertex(Root::A1, q(-1), &vac).unwrap();
        assert_eq!(s.delta(&a), b.scaled(&GR::ints(0, -1)));
    }

    #[test]
    fn e_alpha1_on_vacuum() {
        let s = sp();
        let vac = FockVector::vacuum();
        assert_eq!(s.e_alpha1(&vac), FockVector::monomial(FockMonomial::coset(1)));
        let f = &GR::int(4) / &s.sigma(Root::A1);
        let x = s.vertex(Root::A1, q(-1), &vac).unwrap();
        assert_eq!(s.e_alpha1(&vac), x.scaled(&f));
    }

    #[test]
    fn cutoff_overflow() {
        let s = FockSpace::new(4);
        assert!(matches!(
            s.vertex(Root::A1, q(-7), &FockVector::vacuum()),
            Err(Error::CutoffOverflow { .. })
        ));
    }

    #[test]
    fn matrices_land_in_target() {
        let s = sp();
        for c in -2..=2i64 {
            for l in 0..=10 {
                let src = BucketKey::new(c, l);
                for r in Root::ALL {
                    for n4 in -(24 - l)..=l {
                        let t = s.vertex_target(r, q(n4), src);
                        if t.qweight > 24 {
                            continue;
                        }
                        let m = s.vertex_component(r, q(n4), src).unwrap();
                        assert_eq!(m.cols, s.bucket(src).len());
                        assert_eq!(m.rows, s.bucket(t).len());
                    }
                }
            }
        }
    }
}
