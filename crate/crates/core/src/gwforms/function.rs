//! Forms over K(s) and their second residues at degree-one places.

use crate::linalg::{diagonalize_symmetric, Matrix};
use crate::poly::ratfunc::FunctionPlace;
use crate::poly::{RationalFunction, RationalFunctionField};
use crate::scalars::{FieldDescriptor, FieldScalar};

use super::{GwError, QuadForm, WittClass};

pub type Rf = RationalFunction<FieldScalar>;

/// A diagonal form over K(s).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionFieldForm {
    base: FieldDescriptor,
    entries: Vec<Rf>,
}

impl FunctionFieldForm {
    pub fn new(base: FieldDescriptor, entries: Vec<Rf>) -> Result<Self, GwError> {
        if entries.iter().any(|e| e.num.is_zero()) {
            return Err(GwError::ZeroEntry);
        }
        Ok(FunctionFieldForm { base, entries })
    }

    /// Diagonalize a symmetric Gram matrix over K(s).
    pub fn from_gram(base: FieldDescriptor, g: &Matrix<Rf>) -> Result<Self, GwError> {
        let k = RationalFunctionField::new(base);
        if !g.is_symmetric(&k) {
            return Err(GwError::NotSymmetric);
        }
        Self::new(base, diagonalize_symmetric(&k, g))
    }

    pub fn field(&self) -> RationalFunctionField<FieldDescriptor> {
        RationalFunctionField::new(self.base)
    }

    pub fn base(&self) -> FieldDescriptor {
        self.base
    }

    pub fn entries(&self) -> &[Rf] {
        &self.entries
    }

    pub fn orth_sum(&self, o: &Self) -> Result<Self, GwError> {
        if self.base != o.base {
            return Err(GwError::BaseMismatch(self.base, o.base));
        }
        let mut entries = self.entries.clone();
        entries.extend(o.entries.iter().cloned());
        Ok(FunctionFieldForm { base: self.base, entries })
    }
}

/// Second residue at a place: each entry `pi^n u` with `n` odd contributes
/// `<u(place)>`, entries of even valuation contribute nothing.
pub fn second_residue(q: &FunctionFieldForm, place: &FunctionPlace<FieldScalar>) -> WittClass {
    let k = q.field();
    let entries = q
        .entries
        .iter()
        .filter_map(|e| k.expand_at(e, place))
        .filter(|(v, _)| v.rem_euclid(2) == 1)
        .map(|(_, u)| u)
        .collect();
    WittClass { form: QuadForm::new(q.base, entries).expect("residue units are nonzero") }
}

/// Whether the second residue at the place vanishes in the Witt group.
pub fn is_unramified(q: &FunctionFieldForm, place: &FunctionPlace<FieldScalar>) -> Result<bool, GwError> {
    second_residue(q, place).is_trivial()
}
