use std::collections::BTreeMap;
use std::fmt;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::scalar::{QuarterInt, GR};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Label {
    U,
    Z,
}

/// u(n) = x_{α1}(n), n ∈ 1/4 + ½Z, or z(m) = x_{α1+α2}(m), m ∈ Z.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ModeGen {
    pub label: Label,
    pub n: QuarterInt,
}

impl ModeGen {
    pub fn new(label: Label, n: QuarterInt) -> Result<Self> {
        let ok = match label {
            Label::U => n.is_odd_quarter(),
            Label::Z => n.is_integer(),
        };
        if !ok {
            return Err(Error::Parity(format!("{label:?}({n})")));
        }
        Ok(ModeGen { label, n })
    }

    pub fn u(n4: i64) -> Self {
        Self::new(Label::U, QuarterInt::new(n4)).expect("u mode in 1/4 + Z/2")
    }

    pub fn z(n4: i64) -> Self {
        Self::new(Label::Z, QuarterInt::new(n4)).expect("z mode in Z")
    }

    pub fn qweight(&self) -> i64 {
        -self.n.q
    }

    pub fn charge(&self) -> i64 {
        match self.label {
            Label::U => 1,
            Label::Z => 2,
        }
    }
}

/// Coefficient κ with [u(a), u(b)] = κ·z(a+b) (quarter units).
pub fn u_bracket(a4: i64, b4: i64) -> Option<GR> {
    if (a4 + b4).rem_euclid(4) != 0 {
        return None;
    }
    match a4.rem_euclid(4) {
        1 => Some(GR::frac(-1, 2)),
        3 => Some(GR::frac(1, 2)),
        _ => None,
    }
}

/// [a, b] in the twisted current algebra.
pub fn bracket(a: ModeGen, b: ModeGen) -> EnvElement {
    if a.label == Label::U && b.label == Label::U {
        if let Some(k) = u_bracket(a.n.q, b.n.q) {
            return EnvElement::term(PBWMonomial::new(vec![a.n.q + b.n.q], vec![]), k);
        }
    }
    EnvElement::zero()
}

/// Canonical PBW monomial: central z-part (ascending) followed by the
/// u-part in non-decreasing mode order, so nonnegative modes sit rightmost.
/// Modes are stored in quarter units.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PBWMonomial {
    pub z: Vec<i64>,
    pub u: Vec<i64>,
}

impl PBWMonomial {
    pub fn new(mut z: Vec<i64>, mut u: Vec<i64>) -> Self {
        z.sort_unstable();
        u.sort_unstable();
        PBWMonomial { z, u }
    }

    pub fn one() -> Self {
        PBWMonomial { z: vec![], u: vec![] }
    }

    pub fn charge(&self) -> i64 {
        self.u.len() as i64 + 2 * self.z.len() as i64
    }

    pub fn qweight(&self) -> i64 {
        -self.u.iter().sum::<i64>() - self.z.iter().sum::<i64>()
    }

    /// True if some factor is a nonnegative mode, i.e. the monomial lies in U(n̄)n̄₊.
    pub fn has_nonnegative(&self) -> bool {
        self.u.last().is_some_and(|&n| n >= 0) || self.z.last().is_some_and(|&m| m >= 0)
    }
}

impl fmt::Display for PBWMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.z.is_empty() && self.u.is_empty() {
            return write!(f, "1");
        }
        for m in &self.z {
            write!(f, "z({})", QuarterInt::new(*m))?;
        }
        for n in &self.u {
            write!(f, "u({})", QuarterInt::new(*n))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PBWMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Element of U(n̄[ν̂]) in PBW coordinates.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct EnvElement {
    terms: BTreeMap<PBWMonomial, GR>,
}

impl EnvElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(PBWMonomial::one())
    }

    pub fn monomial(m: PBWMonomial) -> Self {
        Self::term(m, GR::one())
    }

    pub fn term(m: PBWMonomial, x: GR) -> Self {
        let mut e = Self::zero();
        e.add_term(m, &x);
        e
    }

    pub fn gen(g: ModeGen) -> Self {
        match g.label {
            Label::U => Self::monomial(PBWMonomial::new(vec![], vec![g.n.q])),
            Label::Z => Self::monomial(PBWMonomial::new(vec![g.n.q], vec![])),
        }
    }

    /// Ordered product of generators, normal-ordered.
    pub fn word(gens: &[ModeGen], x: GR) -> Self {
        let mut z = Vec::new();
        let mut u = Vec::new();
        for g in gens {
            match g.label {
                Label::U => u.push(g.n.q),
                Label::Z => z.push(g.n.q),
            }
        }
        normal_order_words(vec![(z, u, x)])
    }

    pub fn add_term(&mut self, m: PBWMonomial, x: &GR) {
        if x.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
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

    pub fn add_scaled(&mut self, o: &EnvElement, s: &GR) {
        for (m, x) in &o.terms {
            self.add_term(m.clone(), &(x * s));
        }
    }

    pub fn plus(&self, o: &EnvElement) -> EnvElement {
        let mut e = self.clone();
        e.add_scaled(o, &GR::one());
        e
    }

    pub fn minus(&self, o: &EnvElement) -> EnvElement {
        let mut e = self.clone();
        e.add_scaled(o, &GR::int(-1));
        e
    }

    pub fn scaled(&self, s: &GR) -> EnvElement {
        let mut e = Self::zero();
        e.add_scaled(self, s);
        e
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

    pub fn get(&self, m: &PBWMonomial) -> GR {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PBWMonomial, &GR)> {
        self.terms.iter()
    }

    /// (charge, qweight) if all terms share it.
    pub fn bucket(&self) -> Option<(i64, i64)> {
        let mut it = self.terms.keys().map(|m| (m.charge(), m.qweight()));
        let k = it.next()?;
        it.all(|x| x == k).then_some(k)
    }

    pub fn multiply(&self, o: &EnvElement) -> EnvElement {
        let mut words = Vec::with_capacity(self.len() * o.len());
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let mut z = a.z.clone();
                z.extend_from_slice(&b.z);
                let mut u = a.u.clone();
                u.extend_from_slice(&b.u);
                words.push((z, u, x * y));
            }
        }
        normal_order_words(words)
    }

    /// Projection onto U(n̄₋) along U(n̄)n̄₊.
    pub fn project_minus(&self) -> EnvElement {
        let terms = self.terms.iter().filter(|(m, _)| !m.has_nonnegative()).map(|(m, x)| (m.clone(), x.clone())).collect();
        EnvElement { terms }
    }

    /// If self = s·o, return s.
    pub fn ratio_to(&self, o: &EnvElement) -> Option<GR> {
        if self.is_zero() {
            return Some(GR::zero());
        }
        let (m, y) = o.terms.iter().next()?;
        let s = &self.get(m) / y;
        self.minus(&o.scaled(&s)).is_zero().then_some(s)
    }
}

impl fmt::Debug for EnvElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, x)| format!("({x}){m}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Rewrites products of generators into PBW form.
///
/// Each word is insertion-sorted; every transposition u(a)u(b) → u(b)u(a)
/// spawns the word with the pair replaced by [u(a), u(b)], which has fewer
/// u-factors, so the worklist drains.
pub fn normal_order_words(words: Vec<(Vec<i64>, Vec<i64>, GR)>) -> EnvElement {
    let mut out = EnvElement::zero();
    let mut pending: FxHashMap<(Vec<i64>, Vec<i64>), GR> = FxHashMap::default();
    for (z, u, x) in words {
        *pending.entry((z, u)).or_default() += &x;
    }
    while !pending.is_empty() {
        let batch = std::mem::take(&mut pending);
        for ((mut z, mut u), x) in batch {
            if x.is_zero() {
                continue;
            }
            for j in 1..u.len() {
                let mut i = j;
                while i > 0 && u[i - 1] > u[i] {
                    if let Some(k) = u_bracket(u[i - 1], u[i]) {
                        let mut nu = u.clone();
                        let s = nu[i - 1] + nu[i];
                        nu.drain(i - 1..=i);
                        let mut nz = z.clone();
                        nz.push(s);
                        nz.sort_unstable();
                        *pending.entry((nz, nu)).or_default() += &(&x * &k);
                    }
                    u.swap(i - 1, i);
                    i -= 1;
                }
            }
            z.sort_unstable();
            out.add_term(PBWMonomial { z, u }, &x);
        }
    }
    out
}

pub fn normal_order(e: &EnvElement) -> EnvElement {
    normal_order_words(e.iter().map(|(m, x)| (m.z.clone(), m.u.clone(), x.clone())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_examples() {
        let b = bracket(ModeGen::u(-1), ModeGen::u(-3));
        assert_eq!(b, EnvElement::term(PBWMonomial::new(vec![-4], vec![]), GR::frac(1, 2)));
        assert!(bracket(ModeGen::u(-1), ModeGen::u(-5)).is_zero());
        assert!(bracket(ModeGen::z(-4), ModeGen::u(-1)).is_zero());
        assert!(ModeGen::new(Label::U, QuarterInt::new(-2)).is_err());
    }

    #[test]
    fn ordering_examples() {
        let e = EnvElement::word(&[ModeGen::u(-1), ModeGen::u(-3)], GR::one());
        let mut want = EnvElement::monomial(PBWMonomial::new(vec![], vec![-3, -1]));
        want.add_term(PBWMonomial::new(vec![-4], vec![]), &GR::frac(1, 2));
        assert_eq!(e, want);
        let e = EnvElement::word(&[ModeGen::u(-3), ModeGen::u(-1)], GR::one());
        assert_eq!(e, EnvElement::monomial(PBWMonomial::new(vec![], vec![-3, -1])));
        let e = EnvElement::word(&[ModeGen::z(-4), ModeGen::u(-1)], GR::one());
        assert_eq!(e.len(), 1);
    }

    #[test]
    fn projection_drops_annihilators() {
        let e = EnvElement::word(&[ModeGen::u(1), ModeGen::u(-1), ModeGen::u(-1)], GR::one());
        assert!(e.project_minus().is_zero());
        let e = EnvElement::word(&[ModeGen::u(1), ModeGen::u(-5)], GR::one());
        assert_eq!(e.project_minus(), EnvElement::term(PBWMonomial::new(vec![-4], vec![]), GR::frac(-1, 2)));
    }
}
