use serde::Serialize;

use super::algebra::{normal_order_words, EnvElement, PBWMonomial};
use crate::error::{Error, Result};
use crate::scalar::{Echelon, QuarterInt, GR};

/// Generator families of the left ideal J.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub enum RKind {
    /// Σ u(n1+½)u(n2) + u(n1)u(n2+½)
    R1,
    /// Σ z(m1)z(m2)
    R12,
    /// Σ z(m)u(n)
    R121,
}

impl RKind {
    pub const ALL: [RKind; 3] = [RKind::R1, RKind::R12, RKind::R121];

    pub fn charge(self) -> i64 {
        match self {
            RKind::R1 => 2,
            RKind::R12 => 4,
            RKind::R121 => 3,
        }
    }

    /// Smallest t (quarter units) of the generating range.
    pub fn min_t4(self) -> i64 {
        match self {
            RKind::R1 => 2,
            RKind::R12 => 8,
            RKind::R121 => 5,
        }
    }

    /// Whether t (quarter units) has the right class for this family.
    pub fn t_class_ok(self, t4: i64) -> bool {
        match self {
            RKind::R1 => t4.rem_euclid(2) == 0,
            RKind::R12 => t4.rem_euclid(4) == 0,
            RKind::R121 => t4.rem_euclid(2) == 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RKind::R1 => "R1",
            RKind::R12 => "R12",
            RKind::R121 => "R121",
        }
    }
}

/// The truncated sum for any t, possibly empty.
pub fn r0_sum(kind: RKind, t4: i64) -> EnvElement {
    let mut words = Vec::new();
    match kind {
        RKind::R1 => {
            // n1 + n2 = −t − ½, n1, n2 ≤ −1/4 odd quarters
            let s = -t4 - 2;
            let mut n1 = -1;
            while s - n1 <= -1 {
                let n2 = s - n1;
                if n2.rem_euclid(2) == 1 {
                    words.push((vec![], vec![n1 + 2, n2], GR::one()));
                    words.push((vec![], vec![n1, n2 + 2], GR::one()));
                }
                n1 -= 2;
            }
        }
        RKind::R12 => {
            let mut m1 = -4;
            while -t4 - m1 <= -4 {
                if (-t4 - m1).rem_euclid(4) == 0 {
                    words.push((vec![m1, -t4 - m1], vec![], GR::one()));
                }
                m1 -= 4;
            }
        }
        RKind::R121 => {
            let mut m = -4;
            while -t4 - m <= -1 {
                let n = -t4 - m;
                if n.rem_euclid(2) == 1 {
                    words.push((vec![m], vec![n], GR::one()));
                }
                m -= 4;
            }
        }
    }
    normal_order_words(words)
}

/// R⁰ generator of the ideal; t outside the generating range is rejected.
#[allow(non_snake_case)]
pub fn make_R0(kind: RKind, t: QuarterInt) -> Result<EnvElement> {
    if !kind.t_class_ok(t.q) || t.q < kind.min_t4() {
        return Err(Error::OutOfRange(format!("{}_{t}", kind.name())));
    }
    Ok(r0_sum(kind, t.q))
}

/// Multisets of `count` parts, each a positive value ≡ `residue` mod `step`, summing to `total`,
/// as non-increasing sequences.
fn graded_multisets(total: i64, count: usize, residue: i64, step: i64) -> Vec<Vec<i64>> {
    fn rec(total: i64, count: usize, max: i64, residue: i64, step: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if count == 0 {
            if total == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let smallest = if residue == 0 { step } else { residue };
        if total < smallest * count as i64 {
            return;
        }
        let mut p = max.min(total - smallest * (count as i64 - 1));
        p -= (p - residue).rem_euclid(step);
        while p >= smallest {
            cur.push(p);
            rec(total - p, count - 1, p, residue, step, cur, out);
            cur.pop();
            p -= step;
        }
    }
    let mut out = Vec::new();
    if total >= 0 {
        rec(total, count, total, residue, step, &mut Vec::new(), &mut out);
    }
    out
}

/// PBW monomials of U(n̄₋) with the given charge and qweight.
pub fn pbw_basis(charge: i64, qweight: i64) -> Vec<PBWMonomial> {
    let mut out = Vec::new();
    if charge < 0 || qweight < 0 {
        return out;
    }
    for nz in 0..=charge / 2 {
        let nu = (charge - 2 * nz) as usize;
        let mut wz = 4 * nz;
        while wz <= qweight {
            for zs in graded_multisets(wz, nz as usize, 0, 4) {
                for us in graded_multisets(qweight - wz, nu, 1, 2) {
                    out.push(PBWMonomial::new(zs.iter().map(|x| -x).collect(), us.iter().map(|x| -x).collect()));
                }
            }
            wz += 4;
        }
    }
    out.sort();
    out
}

/// Coordinates of a homogeneous element of U(n̄₋) on `basis`.
pub fn coords(e: &EnvElement, basis: &[PBWMonomial]) -> Vec<GR> {
    let mut v = vec![GR::zero(); basis.len()];
    for (m, x) in e.iter() {
        let i = basis.binary_search(m).expect("monomial outside PBW bucket");
        v[i] = x.clone();
    }
    v
}

/// Spanning set of π(I_Λ) in bucket (charge, qweight), as coordinate rows on
/// `pbw_basis(charge, qweight)`, already reduced to a basis.
///
/// Uses π(p₋ p₊ g) for generators g with qweight(g) ≤ qweight and p₊ built
/// from at most two nonnegative u-modes with 4a ≤ qweight(g) + extra.
pub fn ideal_bucket(charge: i64, qweight: i64, extra: i64) -> Vec<Vec<GR>> {
    let basis = pbw_basis(charge, qweight);
    let mut ech = Echelon::new(basis.len());
    if basis.is_empty() {
        return Vec::new();
    }
    for kind in RKind::ALL {
        let mut t4 = kind.min_t4();
        while t4 <= qweight {
            if !kind.t_class_ok(t4) {
                t4 += 1;
                continue;
            }
            let g = r0_sum(kind, t4);
            let bound = t4 + extra;
            let mut plus: Vec<Vec<i64>> = vec![vec![]];
            let mut a = 1;
            while a <= bound {
                plus.push(vec![a]);
                let mut b = a;
                while a + b <= 2 * bound && b <= bound {
                    plus.push(vec![a, b]);
                    b += 2;
                }
                a += 2;
            }
            for p in plus {
                let c = kind.charge() + p.len() as i64;
                if c > charge {
                    continue;
                }
                let pe = EnvElement::monomial(PBWMonomial::new(vec![], p));
                let y = pe.multiply(&g).project_minus();
                if y.is_zero() {
                    continue;
                }
                let (yc, yl) = y.bucket().expect("homogeneous");
                for pm in pbw_basis(charge - yc, qweight - yl) {
                    let v = EnvElement::monomial(pm).multiply(&y).project_minus();
                    if !v.is_zero() {
                        ech.insert(coords(&v, &basis));
                    }
                }
            }
            t4 += 1;
        }
    }
    ech.rows().cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envelope::algebra::ModeGen;

    fn q(x: i64) -> QuarterInt {
        QuarterInt::new(x)
    }

    #[test]
    fn r0_examples() {
        let r = make_R0(RKind::R1, q(2)).unwrap();
        let want = EnvElement::word(&[ModeGen::u(1), ModeGen::u(-3)], GR::one())
            .plus(&EnvElement::word(&[ModeGen::u(-1), ModeGen::u(-1)], GR::int(2)))
            .plus(&EnvElement::word(&[ModeGen::u(-3), ModeGen::u(1)], GR::one()));
        assert_eq!(r, want);
        assert_eq!(r.project_minus(), EnvElement::monomial(PBWMonomial::new(vec![], vec![-1, -1])).scaled(&GR::int(2)));
        assert_eq!(make_R0(RKind::R12, q(8)).unwrap(), EnvElement::monomial(PBWMonomial::new(vec![-4, -4], vec![])));
        assert_eq!(make_R0(RKind::R121, q(5)).unwrap(), EnvElement::monomial(PBWMonomial::new(vec![-4], vec![-1])));
        assert!(make_R0(RKind::R1, q(1)).is_err());
        assert!(make_R0(RKind::R12, q(4)).is_err());
        assert!(make_R0(RKind::R121, q(3)).is_err());
    }

    #[test]
    fn pbw_counts() {
        assert_eq!(pbw_basis(1, 1).len(), 1);
        assert_eq!(pbw_basis(2, 2).len(), 1);
        assert_eq!(pbw_basis(2, 4).len(), 2);
        assert_eq!(pbw_basis(0, 0).len(), 1);
        assert!(pbw_basis(1, 2).is_empty());
        for m in pbw_basis(3, 11) {
            assert_eq!((m.charge(), m.qweight()), (3, 11));
        }
    }

    #[test]
    fn ideal_examples() {
        assert_eq!(ideal_bucket(2, 2, 0).len(), 1);
        assert_eq!(ideal_bucket(1, 1, 0).len(), 0);
        let basis = pbw_basis(4, 8);
        let zz = coords(&EnvElement::monomial(PBWMonomial::new(vec![-4, -4], vec![])), &basis);
        let mut ech = Echelon::new(basis.len());
        for r in ideal_bucket(4, 8, 0) {
            ech.insert(r);
        }
        assert!(ech.contains(&zz));
    }
}
