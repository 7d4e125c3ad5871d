//! Coefficients of the exponentials E±(α, x) in the half-unit mode encoding.

use super::basis::{partitions, Parts};
use crate::scalar::Q;

fn binom(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// Coefficient of x^{deg/2} in exp(Σ_h s_h · y_h x^{h/2} / (h/2)), where `s` is indexed by h mod 2.
///
/// E⁻(−α, x) is the case s_h = ⟨α, β_h⟩/⟨β_h, β_h⟩; E⁻(α, x) flips the sign.
pub fn exp_series(s: &[Q; 2], deg: usize) -> Vec<(Parts, Q)> {
    let mut out = Vec::new();
    'outer: for p in partitions(deg, deg) {
        let mut coef = Q::ONE;
        let mut i = 0;
        while i < p.len() {
            let h = p[i];
            let mut k = 0u32;
            while i < p.len() && p[i] == h {
                k += 1;
                i += 1;
            }
            let sh = &s[(h % 2) as usize];
            if sh.is_zero() {
                continue 'outer;
            }
            let c = &(sh * &Q::int(2)) / &Q::int(h as i64);
            let fact = (1..=k as i64).fold(Q::ONE, |acc, j| &acc * &Q::int(j));
            coef = &coef * &(&c.pow(k) / &fact);
        }
        out.push((p, coef));
    }
    out
}

/// Sub-multisets of `parts` removed by a translation y_h → y_h − a_h x^{−h/2}:
/// yields (half-units removed, remaining parts, coefficient).
pub fn translation_terms(parts: &[u8], a: &[Q; 2], mut visit: impl FnMut(i64, Parts, &Q)) {
    let mut groups: Vec<(u8, u32)> = Vec::new();
    for &h in parts {
        match groups.last_mut() {
            Some((g, k)) if *g == h => *k += 1,
            _ => groups.push((h, 1)),
        }
    }
    fn rec(
        groups: &[(u8, u32)],
        a: &[Q; 2],
        e: i64,
        rest: &mut Parts,
        coef: Q,
        visit: &mut dyn FnMut(i64, Parts, &Q),
    ) {
        let Some(((h, k), tail)) = groups.split_first() else {
            visit(e, rest.clone(), &coef);
            return;
        };
        let ah = &a[(*h % 2) as usize];
        let neg = -ah;
        let mut pw = Q::ONE;
        for r in 0..=*k {
            if r > 0 {
                if ah.is_zero() {
                    break;
                }
                pw = &pw * &neg;
            }
            let c = &coef * &(&pw * &Q::int(binom(*k, r)));
            let keep = (*k - r) as usize;
            let len = rest.len();
            rest.extend(std::iter::repeat(*h).take(keep));
            rec(tail, a, e + (*h as i64) * r as i64, rest, c, visit);
            rest.truncate(len);
        }
    }
    let mut rest = Vec::with_capacity(parts.len());
    rec(&groups, a, 0, &mut rest, Q::ONE, &mut visit);
}

