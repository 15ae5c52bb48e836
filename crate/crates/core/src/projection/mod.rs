//! Coefficient extraction, resultants, discriminants and the Lazard
//! projection set `P_L(A)`: leading coefficients, trailing coefficients,
//! discriminants and pairwise resultants of a basis `A`.

mod resultant;

use serde::Serialize;

pub use resultant::{
    bareiss_determinant, discriminant, resultant, sylvester_matrix, sylvester_resultant,
};

use crate::arith::{content_and_primitive, is_unit, Polynomial};
use crate::error::{Error, Result};

fn check_nonzero(f: &Polynomial, main_var: usize) -> Result<u32> {
    if main_var >= f.num_vars() {
        return Err(Error::VariableIndex {
            index: main_var,
            num_vars: f.num_vars(),
        });
    }
    f.degree_in(main_var).ok_or(Error::ZeroPolynomial)
}

/// Coefficient of the highest power of `x_main_var`.
pub fn leading_coefficient(f: &Polynomial, main_var: usize) -> Result<Polynomial> {
    let d = check_nonzero(f, main_var)?;
    Ok(f.coefficient_in(main_var, d))
}

/// Coefficient of the lowest power of `x_main_var` that occurs.
pub fn trailing_coefficient(f: &Polynomial, main_var: usize) -> Result<Polynomial> {
    check_nonzero(f, main_var)?;
    let d = f.min_degree_in(main_var).expect("nonzero");
    Ok(f.coefficient_in(main_var, d))
}

/// Where a projection factor came from; indices refer to the basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProjectionSource {
    LeadingCoefficient { element: usize },
    TrailingCoefficient { element: usize },
    Discriminant { element: usize },
    Resultant { first: usize, second: usize },
}

impl std::fmt::Display for ProjectionSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::LeadingCoefficient { element } => write!(f, "ldcf({element})"),
            Self::TrailingCoefficient { element } => write!(f, "trcf({element})"),
            Self::Discriminant { element } => write!(f, "disc({element})"),
            Self::Resultant { first, second } => write!(f, "res({first},{second})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectionFactor {
    pub polynomial: Polynomial,
    pub provenance: Vec<ProjectionSource>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectionSet {
    pub source_polys: Vec<Polynomial>,
    pub main_var: usize,
    /// Normalized, nonconstant, pairwise non-associate, canonically sorted.
    pub factors: Vec<ProjectionFactor>,
    /// Basis elements of degree 1, which have no discriminant.
    pub discriminant_undefined: Vec<usize>,
    /// Violations of the irreducible-basis precondition that could be
    /// detected (non-primitive, non-squarefree, common factors).
    pub warnings: Vec<String>,
}

impl ProjectionSet {
    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.factors.iter().map(|f| f.polynomial.clone()).collect()
    }
}

/// Lazard projection of `basis` with respect to `x_main_var`.
///
/// The caller asserts `basis` is an irreducible basis; only primitivity,
/// squarefreeness and pairwise coprimality are checked, and violations are
/// reported as warnings.
pub fn lazard_projection(basis: &[Polynomial], main_var: usize) -> Result<ProjectionSet> {
    if basis.is_empty() {
        return Err(Error::Empty("projection basis"));
    }
    let n = basis[0].num_vars();
    for f in basis {
        crate::error::check_dims(n, f.num_vars())?;
        let d = check_nonzero(f, main_var)?;
        if d == 0 {
            return Err(Error::DegreeTooLow {
                required: 1,
                found: 0,
            });
        }
    }

    let mut components: Vec<(Polynomial, ProjectionSource)> = Vec::new();
    let mut warnings = Vec::new();
    let mut discriminant_undefined = Vec::new();
    for (i, f) in basis.iter().enumerate() {
        components.push((
            leading_coefficient(f, main_var)?,
            ProjectionSource::LeadingCoefficient { element: i },
        ));
        components.push((
            trailing_coefficient(f, main_var)?,
            ProjectionSource::TrailingCoefficient { element: i },
        ));
        if f.degree_in(main_var) >= Some(2) {
            let disc = discriminant(f, main_var)?;
            if disc.is_zero() {
                warnings.push(format!("element {i} is not squarefree (zero discriminant)"));
            }
            components.push((disc, ProjectionSource::Discriminant { element: i }));
        } else {
            discriminant_undefined.push(i);
        }
        let (content, _) = content_and_primitive(f, main_var)?;
        if !is_unit(&content) {
            warnings.push(format!("element {i} is not primitive (content {content})"));
        }
    }
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let r = resultant(&basis[i], &basis[j], main_var)?;
            if r.is_zero() {
                warnings.push(format!("elements {i} and {j} share a common factor"));
            }
            components.push((
                r,
                ProjectionSource::Resultant {
                    first: i,
                    second: j,
                },
            ));
        }
    }

    let mut factors: Vec<ProjectionFactor> = Vec::new();
    for (p, source) in components {
        if p.is_constant() {
            continue;
        }
        let p = p.normalized();
        match factors.iter_mut().find(|f| f.polynomial == p) {
            Some(existing) => existing.provenance.push(source),
            None => factors.push(ProjectionFactor {
                polynomial: p,
                provenance: vec![source],
            }),
        }
    }
    factors.sort_by(|a, b| a.polynomial.cmp(&b.polynomial));

    Ok(ProjectionSet {
        source_polys: basis.to_vec(),
        main_var,
        factors,
        discriminant_undefined,
        warnings,
    })
}
