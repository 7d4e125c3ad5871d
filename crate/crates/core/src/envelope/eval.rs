use rustc_hash::FxHashMap;

use super::algebra::{EnvElement, PBWMonomial};
use crate::error::Result;
use crate::fock::{Bucket, FockSpace, FockVector, Root};
use crate::scalar::{QuarterInt, GR};

/// f_Λ on monomials, memoized on suffixes (z central, u applied right to left).
pub struct Evaluator<'a> {
    pub fs: &'a FockSpace,
    memo: FxHashMap<PBWMonomial, FockVector>,
}

impl<'a> Evaluator<'a> {
    pub fn new(fs: &'a FockSpace) -> Self {
        Evaluator { fs, memo: FxHashMap::default() }
    }

    pub fn monomial(&mut self, m: &PBWMonomial) -> Result<FockVector> {
        if let Some(v) = self.memo.get(m) {
            return Ok(v.clone());
        }
        let v = if let Some((first, rest)) = m.z.split_first() {
            let tail = PBWMonomial { z: rest.to_vec(), u: m.u.clone() };
            let w = self.monomial(&tail)?;
            self.fs.vertex(Root::A12, QuarterInt::new(*first), &w)?
        } else if let Some((first, rest)) = m.u.split_first() {
            let tail = PBWMonomial { z: vec![], u: rest.to_vec() };
            let w = self.monomial(&tail)?;
            self.fs.vertex(Root::A1, QuarterInt::new(*first), &w)?
        } else {
            FockVector::vacuum()
        };
        self.memo.insert(m.clone(), v.clone());
        Ok(v)
    }

    pub fn element(&mut self, e: &EnvElement) -> Result<FockVector> {
        let mut out = FockVector::zero();
        for (m, x) in e.iter() {
            out.add_scaled(&self.monomial(m)?, x);
        }
        Ok(out)
    }

    /// Columns: f_Λ of each basis monomial in the Fock bucket of the same (charge, qweight).
    pub fn columns(&mut self, basis: &[PBWMonomial], target: &Bucket) -> Result<Vec<Vec<GR>>> {
        basis.iter().map(|m| Ok(target.coords(&self.monomial(m)?))).collect()
    }
}

/// f_Λ(e) = e·v_Λ.
#[allow(non_snake_case)]
pub fn evaluate_fLambda(fs: &FockSpace, e: &EnvElement) -> Result<FockVector> {
    Evaluator::new(fs).element(e)
}
