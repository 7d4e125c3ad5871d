use serde::Serialize;

use super::algebra::{EnvElement, PBWMonomial};
use super::ideal::{r0_sum, RKind};
use crate::lattice::unit;
use crate::report::SuiteReport;
use crate::scalar::{QuarterInt, GR};

/// γ = (α1+α2)/2 with θ(α1) = −i, θ(α2) = i.
#[derive(Clone, Debug, Serialize)]
pub struct ShiftData {
    /// θ(α1) as an exponent of i
    pub theta_a1: u8,
}

impl Default for ShiftData {
    fn default() -> Self {
        ShiftData { theta_a1: 3 }
    }
}

fn shift_by(e: &EnvElement, dir: i64) -> EnvElement {
    let theta = ShiftData::default().theta_a1 as i64;
    let mut out = EnvElement::zero();
    for (m, x) in e.iter() {
        let z = m.z.iter().map(|v| v + 4 * dir).collect();
        let u = m.u.iter().map(|v| v + 2 * dir).collect();
        let ph = unit(dir * theta * m.u.len() as i64);
        out.add_term(PBWMonomial { z, u }, &(x * &ph));
    }
    out
}

/// τ_{γ,θ}: u(n) ↦ θ(α1)·u(n+½), z(m) ↦ z(m+1). Preserves PBW order.
pub fn tau_shift(e: &EnvElement) -> EnvElement {
    shift_by(e, 1)
}

pub fn tau_inverse(e: &EnvElement) -> EnvElement {
    shift_by(e, -1)
}

/// ψ(a) = τ⁻¹(a)·u(−1/4).
pub fn psi_map(e: &EnvElement) -> EnvElement {
    tau_inverse(e).multiply(&EnvElement::monomial(PBWMonomial::new(vec![], vec![-1])))
}

fn fmt_t(t4: i64) -> String {
    QuarterInt::new(t4).to_string()
}

#[derive(Serialize)]
struct Constant {
    t: String,
    value: Option<String>,
}

/// Shift identities for the ideal generators, t ≤ t4max/4.
pub fn check_ideal_stability(t4max: i64) -> SuiteReport {
    let mut rep = SuiteReport::new("ideal_stability", "shift stability of the ideal generators");
    let u14 = EnvElement::monomial(PBWMonomial::new(vec![], vec![-1]));
    let theta = unit(ShiftData::default().theta_a1 as i64);
    let mut boundary = Vec::new();

    // τ(R_t) = θ(α1)^s R_{t−shift} + U(n̄)n̄₊
    let families = [
        (RKind::R1, &theta * &theta, 4, 6),
        (RKind::R12, GR::one(), 8, 16),
        (RKind::R121, theta.clone(), 6, 11),
    ];
    for (kind, coef, shift, from) in families {
        let mut t4 = kind.min_t4();
        while t4 <= t4max {
            if kind.t_class_ok(t4) {
                let lhs = tau_shift(&r0_sum(kind, t4));
                if t4 >= from {
                    let rhs = r0_sum(kind, t4 - shift).scaled(&coef);
                    let ok = lhs.minus(&rhs).project_minus().is_zero();
                    rep.check(ok, || format!("tau({}_{}) residual", kind.name(), fmt_t(t4)));
                } else {
                    // boundary: listed as landing in U(n̄)n̄₊
                    let lands = lhs.project_minus().is_zero();
                    boundary.push(serde_json::json!({
                        "generator": kind.name(), "t": fmt_t(t4), "lands_in_annihilator_ideal": lands
                    }));
                }
            }
            t4 += 1;
        }
    }

    // ψτ(a) = a·u(−1/4)
    let mut t4 = 2;
    while t4 <= t4max {
        let r = r0_sum(RKind::R1, t4);
        if !r.is_zero() {
            let psi_tau = psi_map(&tau_shift(&r));
            rep.check(psi_tau == r.multiply(&u14), || format!("psi tau != right mult at R1_{}", fmt_t(t4)));
        }
        t4 += 2;
    }

    let mut b_values = Vec::new();
    let mut d_values = Vec::new();
    let mut t4 = 8;
    while t4 <= t4max {
        let r = r0_sum(RKind::R12, t4);
        let lhs = psi_map(&tau_shift(&r));
        rep.check(lhs == u14.multiply(&r), || format!("psi tau (R12_{}) != u(-1/4) R12", fmt_t(t4)));
        t4 += 4;
    }

    // ψτ(R1_t) − u(−1/4)R1_t = b·R121_{t+1/4} + U(n̄)n̄₊
    let mut t4 = 2;
    while t4 <= t4max {
        let r = r0_sum(RKind::R1, t4);
        let diff = psi_map(&tau_shift(&r)).minus(&u14.multiply(&r)).project_minus();
        let target = r0_sum(RKind::R121, t4 + 1).project_minus();
        let determined = !(diff.is_zero() && target.is_zero());
        let b = if determined { diff.ratio_to(&target) } else { None };
        rep.check(!determined || b.is_some(), || format!("no b at R1_{}", fmt_t(t4)));
        b_values.push(Constant { t: fmt_t(t4), value: b.map(|x| x.to_string()) });
        t4 += 2;
    }

    // ψτ(R121_t) − u(−1/4)R121_t = d·R12_{t+1/4}
    let mut t4 = 5;
    while t4 <= t4max {
        let r = r0_sum(RKind::R121, t4);
        let diff = psi_map(&tau_shift(&r)).minus(&u14.multiply(&r));
        let target = r0_sum(RKind::R12, t4 + 1);
        let d = if diff.is_zero() && target.is_zero() { None } else { diff.ratio_to(&target) };
        let determined = !(diff.is_zero() && target.is_zero());
        rep.check(!determined || d.is_some(), || format!("no d at R121_{}", fmt_t(t4)));
        d_values.push(Constant { t: fmt_t(t4), value: d.map(|x| x.to_string()) });
        t4 += 2;
    }

    rep.set("t_max", fmt_t(t4max));
    rep.set("b", b_values);
    rep.set("d", d_values);
    rep.set("boundary", boundary);
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envelope::algebra::ModeGen;

    #[test]
    fn tau_examples() {
        let e = EnvElement::gen(ModeGen::u(-3));
        assert_eq!(tau_shift(&e), EnvElement::gen(ModeGen::u(-1)).scaled(&GR::ints(0, -1)));
        let e = EnvElement::word(&[ModeGen::z(-8), ModeGen::u(-5)], GR::one());
        let want = EnvElement::word(&[ModeGen::z(-4), ModeGen::u(-3)], GR::ints(0, -1));
        assert_eq!(tau_shift(&e), want);
        assert_eq!(tau_inverse(&tau_shift(&e)), e);
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi_map(&EnvElement::one()), EnvElement::gen(ModeGen::u(-1)));
        let p = psi_map(&EnvElement::gen(ModeGen::u(-1)));
        assert_eq!(p, EnvElement::word(&[ModeGen::u(-3), ModeGen::u(-1)], GR::i()));
    }

    #[test]
    fn stability_small() {
        let r = check_ideal_stability(12);
        assert!(r.pass, "{}", r.summary());
    }
}
