// SPDX-License-Identifier: Apache-2.0

//! Quadric surfaces `q = 0` in P^3 for diagonal quaternary `q`.
//!
//! Isomorphism is similarity of forms. Function fields are isogenous only when
//! both forms are isotropic (both fields rational) or the forms are similar.
//! The Brauer kernel is trivial unless `q` is anisotropic of discriminant 1,
//! where it is generated by the Witt class `c(q)`; over `Q(sqrt e)` the same
//! rule applies to the base-changed form.

use std::fmt;

use serde::Serialize;

use crate::conic::{BrauerKernel, QuaternionClass};
use crate::error::{Error, Result};
use crate::qform::{similar, QuadraticForm};
use crate::square_class::SquareClass;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricSurface {
    form: QuadraticForm,
    discriminant: SquareClass,
    isotropic: bool,
}

impl QuadricSurface {
    pub fn new(form: QuadraticForm) -> Result<Self> {
        if form.rank() != 4 {
            return Err(Error::domain(format!(
                "a quadric surface needs a rank-4 form, got rank {}",
                form.rank()
            )));
        }
        Ok(QuadricSurface {
            discriminant: form.discriminant(),
            isotropic: form.is_isotropic(),
            form,
        })
    }

    pub fn form(&self) -> &QuadraticForm {
        &self.form
    }

    pub fn discriminant(&self) -> &SquareClass {
        &self.discriminant
    }

    pub fn is_isotropic(&self) -> bool {
        self.isotropic
    }

    /// `c(q)` as a class in `Br(Q)[2]`.
    pub fn witt_class(&self) -> Result<QuaternionClass> {
        QuaternionClass::from_places(self.form.witt_places())
            .map_err(|e| Error::consistency(format!("Witt class of {}: {e}", self.form)))
    }
}

impl fmt::Display for QuadricSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.form)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FieldComparison {
    BothRational,
    Isomorphic,
    NotIsogenous,
}

impl fmt::Display for FieldComparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FieldComparison::BothRational => "BothRational",
            FieldComparison::Isomorphic => "Isomorphic",
            FieldComparison::NotIsogenous => "NotIsogenous",
        })
    }
}

/// Brauer kernel of `Q(sqrt e)(q)` over `Q(sqrt e)`; `e = 1` is Q itself.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelOverExtension {
    pub extension: SquareClass,
    pub kernel: BrauerKernel,
    /// Q-class whose base change generates the kernel.
    pub witness: Option<QuaternionClass>,
}

impl KernelOverExtension {
    fn trivial(e: &SquareClass) -> Self {
        KernelOverExtension {
            extension: e.clone(),
            kernel: BrauerKernel::Trivial,
            witness: None,
        }
    }

    fn order2(e: &SquareClass, witness: QuaternionClass) -> Self {
        KernelOverExtension {
            extension: e.clone(),
            kernel: BrauerKernel::Order2(witness.clone()),
            witness: Some(witness),
        }
    }

    /// Same kernel in `Br(Q(sqrt e))`: both trivial, or both of order 2 with
    /// witnesses whose product splits over the extension.
    pub fn same_as(&self, other: &KernelOverExtension) -> bool {
        match (&self.witness, &other.witness) {
            (None, None) => true,
            (Some(w), Some(w2)) => w.mul(w2).splits_over(&self.extension),
            _ => false,
        }
    }
}

pub fn quadrics_isomorphic(q: &QuadricSurface, q2: &QuadricSurface) -> Result<bool> {
    similar(&q.form, &q2.form)
}

pub fn fields_isogenous(q: &QuadricSurface, q2: &QuadricSurface) -> Result<FieldComparison> {
    Ok(match (q.isotropic, q2.isotropic) {
        (true, true) => FieldComparison::BothRational,
        (false, false) if similar(&q.form, &q2.form)? => FieldComparison::Isomorphic,
        _ => FieldComparison::NotIsogenous,
    })
}

pub fn brauer_kernel_quadric(q: &QuadricSurface) -> Result<BrauerKernel> {
    Ok(kernel_over_quadratic(q, &SquareClass::one())?.kernel)
}

/// Kernel over `l = Q(sqrt e)`.
///
/// A discriminant that stays nontrivial in `l` forces a trivial kernel. When
/// `e = d(q) != 1` the form stays anisotropic over `l` and the kernel is
/// generated by `c(q)`; this is checked against the local splitting rule.
pub fn kernel_over_quadratic(q: &QuadricSurface, e: &SquareClass) -> Result<KernelOverExtension> {
    if q.isotropic {
        return Ok(KernelOverExtension::trivial(e));
    }
    let d = &q.discriminant;
    if !d.is_one() && d != e {
        return Ok(KernelOverExtension::trivial(e));
    }
    let witness = q.witt_class()?;
    if !d.is_one() {
        if witness.splits_over(e) {
            return Err(Error::consistency(format!(
                "{q} is anisotropic with discriminant {d}, yet c(q) = {witness} splits over Q(sqrt({e}))"
            )));
        }
        return Ok(KernelOverExtension::order2(e, witness));
    }
    if witness.splits_over(e) {
        if e.is_one() {
            return Err(Error::consistency(format!(
                "{q} is anisotropic with discriminant 1 but c(q) is split"
            )));
        }
        Ok(KernelOverExtension::trivial(e))
    } else {
        Ok(KernelOverExtension::order2(e, witness))
    }
}

pub fn index_of_quadric(q: &QuadraticForm) -> Result<u8> {
    if !(3..=4).contains(&q.rank()) {
        return Err(Error::Unsupported(format!(
            "index is implemented for rank 3 or 4, got rank {}",
            q.rank()
        )));
    }
    Ok(if q.is_isotropic() { 1 } else { 2 })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionComparison {
    pub extension: SquareClass,
    pub kernel: KernelOverExtension,
    pub kernel_prime: KernelOverExtension,
    pub equal: bool,
}

/// Outcome of the quadric-surface classifier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem8bReport {
    pub isomorphic: bool,
    pub isogeny: FieldComparison,
    /// Extensions `Q(sqrt e)` examined, `e = 1` first.
    pub comparisons: Vec<ExtensionComparison>,
    pub kernels_equal: bool,
    /// Extensions over which the kernels differ.
    pub separating_extensions: Vec<SquareClass>,
}

impl Theorem8bReport {
    /// Human-readable label for the first separating extension.
    pub fn separating_invariant(&self) -> Option<String> {
        self.separating_extensions.first().map(kernel_label)
    }
}

pub fn kernel_label(e: &SquareClass) -> String {
    if e.is_one() {
        "kernel over Q".to_string()
    } else {
        format!("kernel over Q(sqrt({e}))")
    }
}

/// The extensions the classifier inspects: `1`, `d(q)`, `d(q')`, deduplicated.
pub fn tested_extensions(q: &QuadricSurface, q2: &QuadricSurface) -> Vec<SquareClass> {
    let mut out = vec![SquareClass::one()];
    for d in [&q.discriminant, &q2.discriminant] {
        if !out.contains(d) {
            out.push(d.clone());
        }
    }
    out
}

fn compare_over(q: &QuadricSurface, q2: &QuadricSurface, e: &SquareClass) -> Result<ExtensionComparison> {
    let kernel = kernel_over_quadratic(q, e)?;
    let kernel_prime = kernel_over_quadratic(q2, e)?;
    let equal = kernel.same_as(&kernel_prime);
    Ok(ExtensionComparison {
        extension: e.clone(),
        kernel,
        kernel_prime,
        equal,
    })
}

pub fn theorem8b_decide(q: &QuadricSurface, q2: &QuadricSurface) -> Result<Theorem8bReport> {
    theorem8b_decide_with(q, q2, &[])
}

/// As [`theorem8b_decide`], additionally comparing kernels over each auxiliary
/// `Q(sqrt e)`. An auxiliary extension may never separate a pair the base set
/// calls equal; if it does, a consistency error is returned.
pub fn theorem8b_decide_with(
    q: &QuadricSurface,
    q2: &QuadricSurface,
    auxiliary: &[SquareClass],
) -> Result<Theorem8bReport> {
    let isomorphic = quadrics_isomorphic(q, q2)?;
    let isogeny = fields_isogenous(q, q2)?;
    let comparisons = tested_extensions(q, q2)
        .iter()
        .map(|e| compare_over(q, q2, e))
        .collect::<Result<Vec<_>>>()?;
    let kernels_equal = comparisons.iter().all(|c| c.equal);
    let separating_extensions: Vec<SquareClass> = comparisons
        .iter()
        .filter(|c| !c.equal)
        .map(|c| c.extension.clone())
        .collect();

    let same_disc = q.discriminant == q2.discriminant;
    let expected_iso = match isogeny {
        FieldComparison::Isomorphic => true,
        FieldComparison::BothRational => same_disc,
        FieldComparison::NotIsogenous => false,
    };
    if isomorphic != expected_iso {
        return Err(Error::consistency(format!(
            "{q} vs {q2}: isomorphic = {isomorphic} but field comparison is {isogeny}"
        )));
    }
    let expected_kernels = isomorphic || isogeny == FieldComparison::BothRational;
    if kernels_equal != expected_kernels {
        return Err(Error::consistency(format!(
            "{q} vs {q2}: kernels equal = {kernels_equal}, expected {expected_kernels}"
        )));
    }
    if kernels_equal {
        for e in auxiliary {
            let c = compare_over(q, q2, e)?;
            if !c.equal {
                return Err(Error::consistency(format!(
                    "{q} vs {q2}: auxiliary extension Q(sqrt({e})) separates kernels the base set calls equal"
                )));
            }
        }
    }
    Ok(Theorem8bReport {
        isomorphic,
        isogeny,
        comparisons,
        kernels_equal,
        separating_extensions,
    })
}
