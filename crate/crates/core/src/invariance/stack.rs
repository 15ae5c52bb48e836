//! Stacks over sample points: the Lazard sections of every basis element,
//! merged and ordered, the sectors between them, and the valuation of each
//! element on each cell.

use num_traits::One;
use serde::Serialize;

use super::checks::{check_lazard_delineable, DelineabilityReport};
use super::roots::{bisect, isolate_real_roots, ser_rational, Dense, IsolatingInterval};
use crate::arith::{int, Point, Polynomial, Rational};
use crate::error::{check_dims, Error, Result};
use crate::lazard_eval::lazard_evaluate;
use crate::valuation::{lazard_valuation, ValuationVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ValuationSource {
    /// `lazard_valuation` at an exact rational point.
    Computed,
    /// Lazard-evaluation prefix followed by the root multiplicity; used at
    /// irrational sections where no rational point is available.
    Implied,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellValuation {
    pub value: ValuationVector,
    pub source: ValuationSource,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Owner {
    pub element: usize,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Section {
    pub interval: IsolatingInterval,
    /// Elements vanishing on this section; more than one means a shared root.
    pub owners: Vec<Owner>,
    /// One entry per basis element.
    pub valuations: Vec<CellValuation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sector {
    #[serde(serialize_with = "ser_rational")]
    pub sample: Rational,
    pub valuations: Vec<ValuationVector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StackColumn {
    pub base: Point,
    /// Lazard-evaluation prefix of each element.
    pub prefix_valuations: Vec<Vec<u32>>,
    /// Sorted ascending by interval midpoint.
    pub sections: Vec<Section>,
    /// `sections.len() + 1` sectors, bottom to top.
    pub sectors: Vec<Sector>,
    pub disjoint: bool,
}

impl StackColumn {
    fn signature(&self) -> Vec<Vec<Owner>> {
        self.sections.iter().map(|s| s.owners.clone()).collect()
    }

    /// Per-element valuations cell by cell, bottom to top.
    fn cell_valuations(&self) -> Vec<Vec<ValuationVector>> {
        let mut out = Vec::with_capacity(2 * self.sections.len() + 1);
        for (k, sector) in self.sectors.iter().enumerate() {
            out.push(sector.valuations.clone());
            if let Some(s) = self.sections.get(k) {
                out.push(s.valuations.iter().map(|c| c.value.clone()).collect());
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StackVerdict {
    /// Per element.
    pub delineable: Vec<bool>,
    pub sections_disjoint: bool,
    /// Same number of sections with the same owners at every sample.
    pub cell_structure_consistent: bool,
    /// Every element has the same valuation on corresponding cells at every
    /// sample; only meaningful when the cell structure is consistent.
    pub cell_valuations_invariant: bool,
    /// At exact sections the computed valuation equals the prefix followed by
    /// the multiplicity.
    pub exact_sections_agree: bool,
}

impl StackVerdict {
    pub fn passed(&self) -> bool {
        self.delineable.iter().all(|&d| d)
            && self.sections_disjoint
            && self.cell_structure_consistent
            && self.cell_valuations_invariant
            && self.exact_sections_agree
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StackReport {
    pub basis: Vec<Polynomial>,
    pub columns: Vec<StackColumn>,
    pub delineability: Vec<DelineabilityReport>,
    pub verdict: StackVerdict,
}

impl StackReport {
    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }
}

struct Group {
    iv: IsolatingInterval,
    owners: Vec<Owner>,
    squarefree: Dense,
}

fn shares_root(a: &Group, b: &Group) -> bool {
    if a.owners
        .iter()
        .any(|o| b.owners.iter().any(|p| p.element == o.element))
    {
        return false;
    }
    let lo = a.iv.lower.clone().max(b.iv.lower.clone());
    let hi = a.iv.upper.clone().min(b.iv.upper.clone());
    a.squarefree.gcd(&b.squarefree).closed_root_count(&lo, &hi) > 0
}

fn merge(a: Group, b: Group) -> Group {
    let squarefree = a.squarefree.gcd(&b.squarefree);
    let lower = a.iv.lower.clone().max(b.iv.lower.clone());
    let upper = a.iv.upper.clone().min(b.iv.upper.clone());
    let mut owners = a.owners;
    owners.extend(b.owners);
    owners.sort_by_key(|o| o.element);
    Group {
        iv: IsolatingInterval {
            lower,
            upper,
            multiplicity: owners.iter().map(|o| o.multiplicity).max().unwrap_or(0),
        },
        owners,
        squarefree,
    }
}

/// Refines until closed hulls are pairwise disjoint, merging groups whose
/// roots coincide (certified by a gcd root in the overlap).
fn separate(mut groups: Vec<Group>) -> Vec<Group> {
    'outer: loop {
        for i in 0..groups.len() {
            for j in i + 1..groups.len() {
                if !groups[i].iv.overlaps(&groups[j].iv) {
                    continue;
                }
                if shares_root(&groups[i], &groups[j]) {
                    let b = groups.remove(j);
                    let a = groups.remove(i);
                    groups.push(merge(a, b));
                } else {
                    let k = if groups[i].iv.width() >= groups[j].iv.width() {
                        i
                    } else {
                        j
                    };
                    let g = &mut groups[k];
                    bisect(&mut g.iv, &g.squarefree);
                }
                continue 'outer;
            }
        }
        break;
    }
    groups.sort_by_key(|g| g.iv.midpoint());
    groups
}

fn sector_samples(sections: &[Section]) -> Vec<Rational> {
    let (Some(first), Some(last)) = (sections.first(), sections.last()) else {
        return vec![Rational::from_integer(0.into())];
    };
    let mut out = vec![&first.interval.lower - Rational::one()];
    for w in sections.windows(2) {
        out.push((&w[0].interval.upper + &w[1].interval.lower) / int(2));
    }
    out.push(&last.interval.upper + Rational::one());
    out
}

fn build_column(basis: &[Polynomial], alpha: &Point) -> Result<StackColumn> {
    let mut prefixes = Vec::with_capacity(basis.len());
    let mut groups = Vec::new();
    for (e, f) in basis.iter().enumerate() {
        let eval = lazard_evaluate(f, alpha)?;
        let iso = isolate_real_roots(&eval.residual)?;
        if let Some(s) = iso.squarefree() {
            for iv in &iso.intervals {
                groups.push(Group {
                    iv: iv.clone(),
                    owners: vec![Owner {
                        element: e,
                        multiplicity: iv.multiplicity,
                    }],
                    squarefree: s.clone(),
                });
            }
        }
        prefixes.push(eval.prefix_valuation);
    }
    let groups = separate(groups);
    let disjoint = groups.iter().all(|g| g.owners.len() == 1);

    let implied = |e: usize, m: u32| {
        let mut v = prefixes[e].clone();
        v.push(m);
        ValuationVector::new(v)
    };
    let mut sections = Vec::with_capacity(groups.len());
    for g in groups {
        let valuations = (0..basis.len())
            .map(|e| {
                if g.iv.is_exact() {
                    let point = alpha.extended(g.iv.lower.clone());
                    Ok(CellValuation {
                        value: lazard_valuation(&basis[e], &point)?,
                        source: ValuationSource::Computed,
                    })
                } else {
                    let m = g
                        .owners
                        .iter()
                        .find(|o| o.element == e)
                        .map_or(0, |o| o.multiplicity);
                    Ok(CellValuation {
                        value: implied(e, m),
                        source: ValuationSource::Implied,
                    })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        sections.push(Section {
            interval: g.iv,
            owners: g.owners,
            valuations,
        });
    }
    let sectors = sector_samples(&sections)
        .into_iter()
        .map(|s| {
            let point = alpha.extended(s.clone());
            let valuations = basis
                .iter()
                .map(|f| lazard_valuation(f, &point))
                .collect::<Result<Vec<_>>>()?;
            Ok(Sector {
                sample: s,
                valuations,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(StackColumn {
        base: alpha.clone(),
        prefix_valuations: prefixes,
        sections,
        sectors,
        disjoint,
    })
}

fn exact_sections_agree(col: &StackColumn) -> bool {
    col.sections.iter().all(|s| {
        !s.interval.is_exact()
            || s.valuations.iter().enumerate().all(|(e, c)| {
                let m = s
                    .owners
                    .iter()
                    .find(|o| o.element == e)
                    .map_or(0, |o| o.multiplicity);
                let mut expected = col.prefix_valuations[e].clone();
                expected.push(m);
                c.value.components() == expected.as_slice()
            })
    })
}

/// Builds the stack of the basis `a` over each sample point of dimension
/// `n-1` and aggregates the delineability, disjointness and valuation
/// conditions across samples.
pub fn build_stack_report(a: &[Polynomial], samples: &[Point]) -> Result<StackReport> {
    let first = a.first().ok_or(Error::Empty("stack basis"))?;
    if samples.is_empty() {
        return Err(Error::Empty("sample points"));
    }
    for f in a {
        check_dims(first.num_vars(), f.num_vars())?;
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
    }
    let columns = samples
        .iter()
        .map(|alpha| build_column(a, alpha))
        .collect::<Result<Vec<_>>>()?;
    let delineability = a
        .iter()
        .map(|f| check_lazard_delineable(f, samples))
        .collect::<Result<Vec<_>>>()?;

    let signature = columns[0].signature();
    let cell_structure_consistent = columns.iter().all(|c| c.signature() == signature);
    let cells = columns[0].cell_valuations();
    let cell_valuations_invariant =
        cell_structure_consistent && columns.iter().all(|c| c.cell_valuations() == cells);
    let verdict = StackVerdict {
        delineable: delineability.iter().map(|d| d.is_consistent()).collect(),
        sections_disjoint: columns.iter().all(|c| c.disjoint),
        cell_structure_consistent,
        cell_valuations_invariant,
        exact_sections_agree: columns.iter().all(exact_sections_agree),
    };
    Ok(StackReport {
        basis: a.to_vec(),
        columns,
        delineability,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::parser::{parse_polynomial, Variables};

    fn poly(text: &str, vars: &str) -> Polynomial {
        parse_polynomial(text, &Variables::parse_list(vars).unwrap()).unwrap()
    }

    fn vv(c: &[u32]) -> ValuationVector {
        ValuationVector::new(c.to_vec())
    }

    fn line(xs: &[Rational]) -> Vec<Point> {
        xs.iter().map(|x| Point::new(vec![x.clone()])).collect()
    }

    #[test]
    fn circle_at_zero() {
        let f = poly("x^2 + y^2 - 1", "x,y");
        let r = build_stack_report(&[f], &line(&[int(0)])).unwrap();
        assert!(r.passed());
        let col = &r.columns[0];
        assert_eq!(col.sections.len(), 2);
        for (s, y) in col.sections.iter().zip([-1, 1]) {
            assert!(s.interval.is_exact());
            assert_eq!(s.interval.lower, int(y));
            assert_eq!(
                s.valuations[0],
                CellValuation {
                    value: vv(&[0, 1]),
                    source: ValuationSource::Computed
                }
            );
        }
        assert_eq!(col.sectors.len(), 3);
        for s in &col.sectors {
            assert_eq!(s.valuations, vec![vv(&[0, 0])]);
        }
    }

    #[test]
    fn crossing_lines() {
        let a = [poly("y - x", "x,y"), poly("y + x", "x,y")];
        let r = build_stack_report(&a, &line(&[int(1), int(2)])).unwrap();
        assert!(r.passed());
        for col in &r.columns {
            assert_eq!(col.sections.len(), 2);
            assert!(col.disjoint);
            assert_eq!(col.sections[0].owners[0].element, 1);
            assert_eq!(col.sections[1].owners[0].element, 0);
        }

        let r = build_stack_report(&a, &line(&[int(0)])).unwrap();
        let col = &r.columns[0];
        assert!(!col.disjoint);
        assert_eq!(col.sections.len(), 1);
        assert_eq!(col.sections[0].owners.len(), 2);
        assert!(!r.verdict.sections_disjoint);
        assert!(!r.passed());
    }

    #[test]
    fn shared_irrational_root_is_certified() {
        let a = [poly("y^2 - x", "x,y"), poly("(y^2 - x)*y + 3", "x,y")];
        // At x = 2 the second element is y^3 - 2y + 3, which does not share
        // +-sqrt(2); compare with a basis that does.
        let shared = [poly("y^2 - x", "x,y"), poly("y^2 - 2*x", "x,y")];
        let r = build_stack_report(&shared, &line(&[int(2)])).unwrap();
        assert!(r.columns[0].disjoint);
        assert_eq!(r.columns[0].sections.len(), 4);
        let r = build_stack_report(&a, &line(&[int(2)])).unwrap();
        assert!(r.columns[0].disjoint);

        let same = [poly("y^2 - x", "x,y"), poly("(y^2 - x)*(y - 5)", "x,y")];
        let r = build_stack_report(&same, &line(&[int(2)])).unwrap();
        let col = &r.columns[0];
        assert!(!col.disjoint);
        assert_eq!(col.sections.len(), 3);
        assert_eq!(col.sections[0].owners.len(), 2);
        assert_eq!(
            col.sections[0].valuations[0],
            CellValuation {
                value: vv(&[0, 1]),
                source: ValuationSource::Implied
            }
        );
        assert_eq!(col.sections[2].owners.len(), 1);
        assert_eq!(col.sections[2].interval.lower, int(5));
    }

    #[test]
    fn xz_minus_y2_on_line() {
        let f = poly("x*z - y^2", "x,y,z");
        let samples = vec![
            Point::new(vec![int(1), int(0)]),
            Point::new(vec![int(1), int(2)]),
        ];
        let r = build_stack_report(&[f], &samples).unwrap();
        for col in &r.columns {
            assert_eq!(col.prefix_valuations, vec![vec![0, 0]]);
            assert_eq!(col.sections.len(), 1);
            assert_eq!(col.sections[0].owners[0].multiplicity, 1);
            assert_eq!(col.sections[0].valuations[0].value, vv(&[0, 0, 1]));
        }
        assert!(r.passed());
    }

    #[test]
    fn irrational_sections_separate_sectors() {
        let a = [poly("y^2 - 2", "x,y"), poly("y - x", "x,y")];
        let r = build_stack_report(&a, &line(&[rat(7, 5), rat(3, 2)])).unwrap();
        assert_eq!(r.verdict.delineable, vec![true, true]);
        assert!(r.verdict.sections_disjoint);
        assert!(!r.verdict.cell_structure_consistent);
        let col = &r.columns[0];
        assert_eq!(col.sections.len(), 3);
        for w in col.sections.windows(2) {
            assert!(w[0].interval.upper < w[1].interval.lower);
        }
        for s in &col.sectors {
            assert_eq!(s.valuations, vec![vv(&[0, 0]), vv(&[0, 0])]);
        }
        // 7/5 < sqrt(2) < 3/2: the order of the two middle sections flips.
        let first: Vec<usize> = r.columns[0]
            .sections
            .iter()
            .map(|s| s.owners[0].element)
            .collect();
        let second: Vec<usize> = r.columns[1]
            .sections
            .iter()
            .map(|s| s.owners[0].element)
            .collect();
        assert_eq!(first, vec![0, 1, 0]);
        assert_eq!(second, vec![0, 0, 1]);
    }

    #[test]
    fn errors() {
        assert_eq!(
            build_stack_report(&[], &line(&[int(0)])),
            Err(Error::Empty("stack basis"))
        );
        assert_eq!(
            build_stack_report(&[poly("y", "x,y")], &[]),
            Err(Error::Empty("sample points"))
        );
    }
}
