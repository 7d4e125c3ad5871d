//! U(n̄[ν̂]) on the basis u(n) = x_{α1}(n), z(m) = x_{α1+α2}(m), with the ideal I_Λ and the shift maps.

mod algebra;
mod eval;
mod ideal;
mod shift;

pub use algebra::{bracket, normal_order, normal_order_words, u_bracket, EnvElement, Label, ModeGen, PBWMonomial};
pub use eval::{evaluate_fLambda, Evaluator};
pub use ideal::{coords, ideal_bucket, make_R0, pbw_basis, r0_sum, RKind};
pub use shift::{check_ideal_stability, psi_map, tau_inverse, tau_shift, ShiftData};
