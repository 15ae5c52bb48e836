use serde::Serialize;

use super::roots::isolate_real_roots;
use crate::arith::{Point, Polynomial, Rational};
use crate::error::{Error, Result};
use crate::lazard_eval::lazard_evaluate;
use crate::valuation::{lazard_valuation, order_at, OrderValue, ValuationVector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum InvarianceVerdict<T> {
    Constant {
        value: T,
    },
    NonConstant {
        first: T,
        witness_index: usize,
        witness: T,
    },
}

impl<T: std::fmt::Display> std::fmt::Display for InvarianceVerdict<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Constant { value } => write!(f, "constant {value}"),
            Self::NonConstant {
                first,
                witness_index,
                witness,
            } => write!(
                f,
                "sample {witness_index} has {witness}, sample 0 has {first}"
            ),
        }
    }
}

/// Per-sample values of some invariant and whether they agree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvarianceReport<T> {
    pub samples: Vec<Point>,
    pub values: Vec<T>,
    #[serde(flatten)]
    pub verdict: InvarianceVerdict<T>,
}

impl<T> InvarianceReport<T> {
    pub fn is_invariant(&self) -> bool {
        matches!(self.verdict, InvarianceVerdict::Constant { .. })
    }
}

fn summarize<T: Clone + PartialEq>(samples: &[Point], values: Vec<T>) -> InvarianceReport<T> {
    let first = values[0].clone();
    let verdict = match values.iter().position(|v| *v != first) {
        None => InvarianceVerdict::Constant { value: first },
        Some(i) => InvarianceVerdict::NonConstant {
            first,
            witness_index: i,
            witness: values[i].clone(),
        },
    };
    InvarianceReport {
        samples: samples.to_vec(),
        values,
        verdict,
    }
}

fn nonempty(samples: &[Point]) -> Result<()> {
    if samples.is_empty() {
        Err(Error::Empty("sample points"))
    } else {
        Ok(())
    }
}

/// Is `v_a(f)` the same at every sample?
pub fn check_valuation_invariant(
    f: &Polynomial,
    samples: &[Point],
) -> Result<InvarianceReport<ValuationVector>> {
    nonempty(samples)?;
    let values = samples
        .iter()
        .map(|a| lazard_valuation(f, a))
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize(samples, values))
}

/// Is `ord_a(f)` the same at every sample?
pub fn check_order_invariant(
    f: &Polynomial,
    samples: &[Point],
) -> Result<InvarianceReport<OrderValue>> {
    nonempty(samples)?;
    let values = samples
        .iter()
        .map(|a| order_at(f, a))
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize(samples, values))
}

/// Which of the three delineability conditions a finite sample violates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Delineability {
    Consistent,
    Inconsistent {
        condition: DelineabilityCondition,
        witness_index: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DelineabilityCondition {
    PrefixValuation,
    RootCount,
    Multiplicities,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DelineabilityReport {
    pub sample_points: Vec<Point>,
    pub prefix_valuations: Vec<Vec<u32>>,
    pub root_counts: Vec<usize>,
    pub multiplicity_vectors: Vec<Vec<u32>>,
    #[serde(flatten)]
    pub verdict: Delineability,
}

impl DelineabilityReport {
    pub fn is_consistent(&self) -> bool {
        self.verdict == Delineability::Consistent
    }
}

/// Finite-sample check of Lazard delineability over points of dimension
/// `n-1`: the prefix valuation, the number of real roots of the Lazard
/// residual and their multiplicities must agree across samples. Continuity
/// of the root functions is not (and cannot be) checked.
pub fn check_lazard_delineable(f: &Polynomial, samples: &[Point]) -> Result<DelineabilityReport> {
    nonempty(samples)?;
    let mut prefix_valuations = Vec::new();
    let mut root_counts = Vec::new();
    let mut multiplicity_vectors = Vec::new();
    for alpha in samples {
        let eval = lazard_evaluate(f, alpha)?;
        let iso = isolate_real_roots(&eval.residual)?;
        prefix_valuations.push(eval.prefix_valuation);
        root_counts.push(iso.root_count());
        multiplicity_vectors.push(iso.multiplicities());
    }
    let mismatch = |condition, idx: Option<usize>| {
        idx.map(|witness_index| Delineability::Inconsistent {
            condition,
            witness_index,
        })
    };
    let verdict = mismatch(
        DelineabilityCondition::PrefixValuation,
        prefix_valuations
            .iter()
            .position(|p| *p != prefix_valuations[0]),
    )
    .or_else(|| {
        mismatch(
            DelineabilityCondition::RootCount,
            root_counts.iter().position(|c| *c != root_counts[0]),
        )
    })
    .or_else(|| {
        mismatch(
            DelineabilityCondition::Multiplicities,
            multiplicity_vectors
                .iter()
                .position(|m| *m != multiplicity_vectors[0]),
        )
    })
    .unwrap_or(Delineability::Consistent);
    Ok(DelineabilityReport {
        sample_points: samples.to_vec(),
        prefix_valuations,
        root_counts,
        multiplicity_vectors,
        verdict,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionValuationReport {
    pub valuation: ValuationVector,
    pub expected: ValuationVector,
    pub nullified: bool,
    /// Multiplicity of the root in the Lazard residual.
    pub residual_multiplicity: u32,
    pub passed: bool,
}

/// At an exact rational root `root` of the Lazard residual of `f` over
/// `sample`, checks that `v_{(sample, root)}(f)` is `(0, ..., 0, m)` (or the
/// Lazard-evaluation prefix followed by `m` when `f` is nullified), where
/// `m = expected_m` is the root's multiplicity.
pub fn check_section_valuation(
    f: &Polynomial,
    sample: &Point,
    root: &Rational,
    expected_m: u32,
) -> Result<SectionValuationReport> {
    let eval = lazard_evaluate(f, sample)?;
    let last = f.num_vars() - 1;
    let residual_multiplicity = eval.residual.divisibility_exponent(last, root)?;
    if residual_multiplicity == 0 {
        return Err(Error::NotARoot {
            value: crate::arith::format_rational(root),
        });
    }
    let valuation = lazard_valuation(f, &sample.extended(root.clone()))?;
    let nullified = eval.nullified();
    let mut expected = eval.prefix_valuation;
    expected.push(expected_m);
    let expected = ValuationVector::new(expected);
    let passed = valuation == expected && residual_multiplicity == expected_m;
    Ok(SectionValuationReport {
        valuation,
        expected,
        nullified,
        residual_multiplicity,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::invariance::arcs::circle_point;
    use crate::parser::{parse_polynomial, Variables};

    fn poly(text: &str, vars: &str) -> Polynomial {
        parse_polynomial(text, &Variables::parse_list(vars).unwrap()).unwrap()
    }

    fn pts(coords: &[&[Rational]]) -> Vec<Point> {
        coords.iter().map(|c| Point::new(c.to_vec())).collect()
    }

    fn vv(c: &[u32]) -> ValuationVector {
        ValuationVector::new(c.to_vec())
    }

    #[test]
    fn z_axis_valuation_constant_order_not() {
        let f = poly("x*z - y^2", "x,y,z");
        let samples: Vec<Point> = [-1, 0, 1, 2]
            .iter()
            .map(|&a| Point::new(vec![int(0), int(0), int(a)]))
            .collect();
        let r = check_valuation_invariant(&f, &samples).unwrap();
        assert_eq!(
            r.verdict,
            InvarianceVerdict::Constant {
                value: vv(&[0, 2, 0])
            }
        );
        let o = check_order_invariant(&f, &samples).unwrap();
        assert_eq!(
            o.verdict,
            InvarianceVerdict::NonConstant {
                first: OrderValue(1),
                witness_index: 1,
                witness: OrderValue(2)
            }
        );
    }

    #[test]
    fn circle_samples() {
        let f = poly("x^2 + y^2 - 1", "x,y");
        let mut samples: Vec<Point> = [rat(1, 3), int(1), int(3), int(-2)]
            .iter()
            .map(circle_point)
            .collect();
        let r = check_valuation_invariant(&f, &samples).unwrap();
        assert_eq!(
            r.verdict,
            InvarianceVerdict::Constant { value: vv(&[0, 1]) }
        );
        samples.push(circle_point(&int(0)));
        let r = check_valuation_invariant(&f, &samples).unwrap();
        assert_eq!(
            r.verdict,
            InvarianceVerdict::NonConstant {
                first: vv(&[0, 1]),
                witness_index: 4,
                witness: vv(&[0, 2])
            }
        );
        let o = check_order_invariant(&f, &samples).unwrap();
        assert_eq!(
            o.verdict,
            InvarianceVerdict::Constant {
                value: OrderValue(1)
            }
        );
    }

    #[test]
    fn constant_polynomial_is_invariant() {
        let f = Polynomial::one(2);
        let samples = pts(&[&[int(0), int(1)], &[rat(1, 2), int(-7)]]);
        assert!(check_valuation_invariant(&f, &samples)
            .unwrap()
            .is_invariant());
        let o = check_order_invariant(&f, &samples).unwrap();
        assert_eq!(
            o.verdict,
            InvarianceVerdict::Constant {
                value: OrderValue(0)
            }
        );
        assert_eq!(
            check_valuation_invariant(&f, &[]),
            Err(Error::Empty("sample points"))
        );
    }

    #[test]
    fn delineability_over_the_disc() {
        let f = poly("x^2 + y^2 - 1", "x,y");
        let inside = pts(&[&[rat(-1, 2)], &[int(0)], &[rat(1, 2)]]);
        let r = check_lazard_delineable(&f, &inside).unwrap();
        assert!(r.is_consistent());
        assert_eq!(r.prefix_valuations, vec![vec![0]; 3]);
        assert_eq!(r.root_counts, vec![2; 3]);
        assert_eq!(r.multiplicity_vectors, vec![vec![1, 1]; 3]);

        let across = pts(&[&[rat(1, 2)], &[int(2)]]);
        let r = check_lazard_delineable(&f, &across).unwrap();
        assert_eq!(
            r.verdict,
            Delineability::Inconsistent {
                condition: DelineabilityCondition::RootCount,
                witness_index: 1
            }
        );
    }

    #[test]
    fn delineability_prefix_mismatch() {
        let f = poly("x*z - y^2", "x,y,z");
        let single = pts(&[&[int(0), int(0)]]);
        assert!(check_lazard_delineable(&f, &single)
            .unwrap()
            .is_consistent());
        let two = pts(&[&[int(0), int(0)], &[int(1), int(1)]]);
        let r = check_lazard_delineable(&f, &two).unwrap();
        assert_eq!(r.prefix_valuations, vec![vec![0, 2], vec![0, 0]]);
        assert_eq!(
            r.verdict,
            Delineability::Inconsistent {
                condition: DelineabilityCondition::PrefixValuation,
                witness_index: 1
            }
        );
    }

    #[test]
    fn section_valuations() {
        let circle = poly("x^2 + y^2 - 1", "x,y");
        let r = check_section_valuation(&circle, &Point::new(vec![int(0)]), &int(1), 1).unwrap();
        assert!(r.passed);
        assert_eq!(r.valuation, vv(&[0, 1]));

        let double = poly("(y - x)^2", "x,y");
        let r = check_section_valuation(&double, &Point::new(vec![int(1)]), &int(1), 2).unwrap();
        assert!(r.passed);
        assert_eq!(r.valuation, vv(&[0, 2]));

        let r = check_section_valuation(&circle, &Point::new(vec![int(1)]), &int(0), 2).unwrap();
        assert!(r.passed);
        assert_eq!(r.valuation, vv(&[0, 2]));

        let r = check_section_valuation(&circle, &Point::new(vec![int(1)]), &int(0), 1).unwrap();
        assert!(!r.passed);

        assert!(matches!(
            check_section_valuation(&circle, &Point::new(vec![int(0)]), &int(0), 1),
            Err(Error::NotARoot { .. })
        ));
    }

    #[test]
    fn section_valuation_under_nullification() {
        // x*y vanishes on the whole line x = 0; the residual there is y.
        let f = poly("x*y", "x,y");
        let r = check_section_valuation(&f, &Point::new(vec![int(0)]), &int(0), 1).unwrap();
        assert!(r.nullified);
        assert_eq!(r.valuation, vv(&[1, 1]));
        assert!(r.passed);
    }
}
