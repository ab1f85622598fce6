//! Diagonal quadratic forms as representatives of Grothendieck–Witt classes.
//!
//! Classes over ℚ are compared through rank, signature, discriminant and
//! Hasse symbols; over 𝔽_p through rank and discriminant.

mod cusp;
mod function;
mod rational;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::etale::{AlgebraElement, EtaleAlgebra, EtaleError};
use crate::field::{Field, SquareTest};
use crate::linalg::{diagonalize_symmetric, Matrix};
use crate::scalars::{square_class_reduce, FieldDescriptor, FieldScalar, Place, SquareClass};

pub use cusp::{cusp_trace_form, CuspTraceForm};
pub use function::{is_unramified, second_residue, FunctionFieldForm};
pub use rational::hasse_at;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GwError {
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("forms live over different base fields ({0} vs {1})")]
    BaseMismatch(FieldDescriptor, FieldDescriptor),
    #[error("zero entry in a diagonal form")]
    ZeroEntry,
    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,
    #[error("equivalence undecided: Hasse symbols unknown at the prime divisors of {0:?}")]
    Inconclusive(Vec<String>),
    #[error("unit condition violated: {0}")]
    UnitConditionViolated(&'static str),
    #[error(transparent)]
    Etale(#[from] EtaleError),
}

/// A diagonal form `<a_1, ..., a_n>`; the empty form is the zero class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadForm {
    base: FieldDescriptor,
    entries: Vec<FieldScalar>,
}

/// Complete invariants of a class (complete once `unresolved` is empty).
/// Equality reads absent Hasse entries as `+1`.
#[derive(Clone, Debug, Eq, Serialize)]
pub struct GWInvariants {
    pub rank: usize,
    /// Determinant modulo squares (unsigned convention).
    pub disc: SquareClass,
    /// Present over ℚ only.
    pub signature: Option<i64>,
    /// `prod_{i<j} (a_i, a_j)_v` at ∞, 2 and every known prime divisor of an entry.
    pub hasse: BTreeMap<Place, i32>,
    /// Entry cofactors that resisted factoring; the Hasse symbols at their
    /// prime divisors are not listed.
    pub unresolved: Vec<BigUint>,
}

impl PartialEq for GWInvariants {
    fn eq(&self, o: &Self) -> bool {
        self.rank == o.rank
            && self.disc == o.disc
            && self.signature == o.signature
            && self.unresolved == o.unresolved
            && self.hasse.keys().chain(o.hasse.keys()).all(|p| self.hasse.get(p).unwrap_or(&1) == o.hasse.get(p).unwrap_or(&1))
    }
}

impl GWInvariants {
    /// `(-1)^(r(r-1)/2) * disc`.
    pub fn signed_disc(&self) -> SquareClass {
        let r = self.rank as u64;
        if (r * r.saturating_sub(1) / 2) % 2 == 0 {
            self.disc.clone()
        } else {
            let minus = square_class_reduce(&self.disc.descriptor, &self.disc.descriptor.from_i64(-1)).unwrap();
            self.disc.mul(&minus)
        }
    }

    /// Product of the listed Hasse symbols. Equals 1 when nothing is unresolved;
    /// otherwise it is the product of the missing symbols.
    pub fn hasse_product(&self) -> i32 {
        self.hasse.values().product()
    }
}

impl QuadForm {
    pub fn new(base: FieldDescriptor, entries: Vec<FieldScalar>) -> Result<Self, GwError> {
        for e in &entries {
            if e.is_zero() {
                return Err(GwError::ZeroEntry);
            }
            if e.descriptor() != base {
                return Err(GwError::BaseMismatch(base, e.descriptor()));
            }
        }
        Ok(QuadForm { base, entries })
    }

    pub fn zero(base: FieldDescriptor) -> Self {
        QuadForm { base, entries: Vec::new() }
    }

    pub fn from_i64s(base: FieldDescriptor, entries: &[i64]) -> Result<Self, GwError> {
        Self::new(base, entries.iter().map(|&a| base.from_i64(a)).collect())
    }

    /// `m` copies of the hyperbolic plane `<1, -1>`.
    pub fn hyperbolic(base: FieldDescriptor, m: usize) -> Self {
        let mut entries = Vec::with_capacity(2 * m);
        for _ in 0..m {
            entries.push(base.one());
            entries.push(base.from_i64(-1));
        }
        QuadForm { base, entries }
    }

    pub fn base(&self) -> FieldDescriptor {
        self.base
    }

    pub fn entries(&self) -> &[FieldScalar] {
        &self.entries
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    fn check_base(&self, o: &QuadForm) -> Result<(), GwError> {
        if self.base != o.base {
            return Err(GwError::BaseMismatch(self.base, o.base));
        }
        Ok(())
    }

    pub fn orth_sum(&self, o: &QuadForm) -> Result<QuadForm, GwError> {
        self.check_base(o)?;
        let mut entries = self.entries.clone();
        entries.extend(o.entries.iter().cloned());
        Ok(QuadForm { base: self.base, entries })
    }

    pub fn tensor(&self, o: &QuadForm) -> Result<QuadForm, GwError> {
        self.check_base(o)?;
        let f = self.base;
        let entries = self.entries.iter().flat_map(|a| o.entries.iter().map(move |b| f.mul(a, b))).collect();
        Ok(QuadForm { base: self.base, entries })
    }

    /// `<c> ⊗ self`.
    pub fn scale(&self, c: &FieldScalar) -> Result<QuadForm, GwError> {
        QuadForm::new(self.base, vec![c.clone()])?.tensor(self)
    }

    pub fn invariants(&self) -> GWInvariants {
        let f = self.base;
        match f {
            FieldDescriptor::Rationals => rational::invariants(self),
            FieldDescriptor::PrimeField(_) => {
                let prod = self.entries.iter().fold(f.one(), |acc, a| f.mul(&acc, a));
                GWInvariants {
                    rank: self.rank(),
                    disc: square_class_reduce(&f, &prod).unwrap(),
                    signature: None,
                    hasse: BTreeMap::new(),
                    unresolved: Vec::new(),
                }
            }
        }
    }

    /// Isometry test. Over ℚ this is Hasse–Minkowski and may be
    /// `Inconclusive` when entries carry unfactored cofactors.
    pub fn equivalent(&self, o: &QuadForm) -> Result<bool, GwError> {
        self.check_base(o)?;
        if self.rank() != o.rank() {
            return Ok(false);
        }
        if self.entrywise_same_classes(o) {
            return Ok(true);
        }
        match self.base {
            FieldDescriptor::Rationals => rational::equivalent(self, o),
            FieldDescriptor::PrimeField(_) => Ok(self.invariants().disc == o.invariants().disc),
        }
    }

    /// Sufficient test: after sorting, corresponding entries differ by squares.
    fn entrywise_same_classes(&self, o: &QuadForm) -> bool {
        let f = self.base;
        let sorted = |q: &QuadForm| {
            let mut v = q.entries.clone();
            v.sort_by_key(|a| a.to_string());
            v
        };
        sorted(self).iter().zip(sorted(o).iter()).all(|(a, b)| f.same_square_class(a, b))
    }

    /// The Witt class of this form.
    pub fn witt_class(&self) -> WittClass {
        WittClass { form: self.clone() }
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, a) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ">")
    }
}

/// A form read modulo hyperbolic planes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittClass {
    pub form: QuadForm,
}

impl WittClass {
    /// Strip pairs `<a>, <-a>` (up to squares) greedily.
    pub fn reduced(&self) -> QuadForm {
        let f = self.form.base;
        let classes: Vec<SquareClass> = self.form.entries.iter().map(|a| square_class_reduce(&f, a).unwrap()).collect();
        let negs: Vec<SquareClass> = self.form.entries.iter().map(|a| square_class_reduce(&f, &f.neg(a)).unwrap()).collect();
        let mut used = vec![false; classes.len()];
        for i in 0..classes.len() {
            if used[i] {
                continue;
            }
            if let Some(j) = (i + 1..classes.len()).find(|&j| !used[j] && classes[j] == negs[i]) {
                used[i] = true;
                used[j] = true;
            }
        }
        let entries = self.form.entries.iter().zip(&used).filter(|(_, u)| !**u).map(|(a, _)| a.clone()).collect();
        QuadForm { base: f, entries }
    }

    /// Whether the class is zero in the Witt group.
    pub fn is_trivial(&self) -> Result<bool, GwError> {
        let r = self.reduced();
        if r.rank() == 0 {
            return Ok(true);
        }
        if r.rank() % 2 == 1 {
            return Ok(false);
        }
        r.equivalent(&QuadForm::hyperbolic(r.base, r.rank() / 2))
    }

    pub fn add(&self, o: &WittClass) -> Result<WittClass, GwError> {
        Ok(WittClass { form: self.form.orth_sum(&o.form)? })
    }

    pub fn equivalent(&self, o: &WittClass) -> Result<bool, GwError> {
        let minus = self.form.base.from_i64(-1);
        self.add(&WittClass { form: o.form.scale(&minus)? })?.is_trivial()
    }
}

/// Congruence diagonalization of a symmetric Gram matrix over `base`;
/// zero pivots are dropped, so the rank equals the matrix rank.
pub fn diagonalize(base: FieldDescriptor, g: &Matrix<FieldScalar>) -> Result<QuadForm, GwError> {
    if !g.is_symmetric(&base) {
        return Err(GwError::NotSymmetric);
    }
    if base.characteristic() == 2 {
        return Err(GwError::CharacteristicTwo);
    }
    if base.is_rationals() {
        if let Some(d) = leading_minor_pivots(g) {
            return QuadForm::new(base, d);
        }
    }
    QuadForm::new(base, diagonalize_symmetric(&base, g))
}

/// Over ℚ, when every leading principal minor `M_k` is nonzero, the pivots
/// `M_k / M_(k-1)` of symmetric elimination without pivoting, from a
/// fraction-free elimination of the integral matrix `L g`.
fn leading_minor_pivots(g: &Matrix<FieldScalar>) -> Option<Vec<FieldScalar>> {
    let n = g.nrows();
    let qs: Vec<Vec<&BigRational>> = g.rows().iter().map(|r| r.iter().map(|c| c.as_rational()).collect::<Option<_>>()).collect::<Option<_>>()?;
    let l = qs.iter().flatten().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut a: Vec<Vec<BigInt>> = qs.iter().map(|r| r.iter().map(|q| q.numer() * (&l / q.denom())).collect()).collect();
    let mut minors = Vec::with_capacity(n);
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            return None;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
        }
        prev = a[k][k].clone();
        minors.push(prev.clone());
    }
    let mut last = BigInt::one();
    Some(
        minors
            .into_iter()
            .map(|m| {
                let d = FieldScalar::Rational(BigRational::new(m.clone(), &last * &l));
                last = m;
                d
            })
            .collect(),
    )
}

/// The transfer `Tr_*<alpha>` of a rank-one form along an étale algebra.
pub fn transfer_trace(a: &mut EtaleAlgebra<FieldDescriptor>, alpha: &AlgebraElement<FieldScalar>) -> Result<QuadForm, GwError> {
    let g = a.trace_form(alpha)?;
    diagonalize(*a.base(), &g)
}

pub fn to_bigint_rep(a: &FieldScalar) -> BigInt {
    match a {
        FieldScalar::Rational(q) => q.numer() * q.denom(),
        FieldScalar::Modular { value, .. } => BigInt::from(*value),
    }
}
