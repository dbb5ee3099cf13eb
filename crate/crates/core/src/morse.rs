//! Index series of critical levels and the Morse relation on sampled path
//! spaces.
//!
//! The index of a critical level `E` is the Poincaré polynomial of the pair
//! of sublevel sets at `E + ε` and `E - ε`, for `ε` small enough that the
//! strip contains no other critical level. Summing indices over all levels
//! and subtracting the Poincaré polynomial of the whole space must leave a
//! polynomial divisible by `1 + λ` with nonnegative quotient. Complexes here
//! carry homology in degrees zero and one only, so series identities are
//! checked through degree one.

use thiserror::Error;

use crate::geodesic::Geodesic;
use crate::homology::{FilteredComplex, HomologyError};
use crate::series::{FormalSeries, SeriesError};

/// Relative gap under which two critical energies count as one level.
pub const LEVEL_GROUP_REL_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MorseError {
    #[error("strip half width must be positive and finite, got {0}")]
    InvalidEpsilon(f64),
    #[error("strip of half width {eps} around level {level} also contains the critical level {conflict}")]
    DirtyStrip { level: f64, eps: f64, conflict: f64 },
    #[error("geodesic index {which} out of range, enumeration has {count}")]
    GeodesicOutOfRange { which: usize, count: usize },
    #[error("geodesic {which} shares the critical level {energy} with another; its individual index is undefined")]
    TiedLevel { which: usize, energy: f64 },
    #[error("lemma levels must satisfy a <= b <= c, got ({a}, {b}, {c})")]
    UnorderedLevels { a: f64, b: f64, c: f64 },
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

fn same_level(a: f64, b: f64) -> bool {
    (a - b).abs() <= LEVEL_GROUP_REL_TOL * a.abs().max(b.abs()).max(1.0)
}

/// Distinct critical level with the enumeration indices sitting on it.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalLevel {
    pub energy: f64,
    pub members: Vec<usize>,
}

/// Group an energy-sorted enumeration into distinct critical levels.
pub fn critical_levels(enumeration: &[Geodesic]) -> Vec<CriticalLevel> {
    let mut out: Vec<CriticalLevel> = Vec::new();
    for (i, g) in enumeration.iter().enumerate() {
        match out.last_mut() {
            Some(level) if same_level(level.energy, g.energy) => level.members.push(i),
            _ => out.push(CriticalLevel {
                energy: g.energy,
                members: vec![i],
            }),
        }
    }
    out
}

/// Index series of the critical level `level`: the Poincaré polynomial of the
/// sublevel pair at `level ± eps`. The strip must be clean, i.e. contain no
/// other critical level.
pub fn index_of_level(
    complex: &FilteredComplex,
    levels: &[f64],
    level: f64,
    eps: f64,
) -> Result<FormalSeries, MorseError> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(MorseError::InvalidEpsilon(eps));
    }
    for &c in levels {
        if !same_level(c, level) && (c - level).abs() <= eps {
            return Err(MorseError::DirtyStrip {
                level,
                eps,
                conflict: c,
            });
        }
    }
    Ok(complex.poincare_pair(level + eps, level - eps)?)
}

/// Whether two clean strip widths yield the same index series at `level`,
/// coefficient for coefficient.
pub fn epsilon_independent(
    complex: &FilteredComplex,
    levels: &[f64],
    level: f64,
    eps1: f64,
    eps2: f64,
) -> Result<bool, MorseError> {
    let a = index_of_level(complex, levels, level, eps1)?;
    let b = index_of_level(complex, levels, level, eps2)?;
    Ok(a == b)
}

/// Index series of one enumerated geodesic. Fails when the geodesic shares
/// its level with another, since the level index cannot then be attributed.
pub fn index_of_geodesic(
    complex: &FilteredComplex,
    enumeration: &[Geodesic],
    which: usize,
    eps: f64,
) -> Result<FormalSeries, MorseError> {
    if which >= enumeration.len() {
        return Err(MorseError::GeodesicOutOfRange {
            which,
            count: enumeration.len(),
        });
    }
    let levels = critical_levels(enumeration);
    let host = levels
        .iter()
        .find(|l| l.members.contains(&which))
        .expect("every geodesic belongs to a level");
    if host.members.len() > 1 {
        return Err(MorseError::TiedLevel {
            which,
            energy: host.energy,
        });
    }
    let level_values: Vec<f64> = levels.iter().map(|l| l.energy).collect();
    index_of_level(complex, &level_values, host.energy, eps)
}

/// Multiplicity of one enumerated geodesic: its index series at `λ = 1`.
pub fn multiplicity_of_geodesic(
    complex: &FilteredComplex,
    enumeration: &[Geodesic],
    which: usize,
    eps: f64,
) -> Result<u64, MorseError> {
    Ok(index_of_geodesic(complex, enumeration, which, eps)?.eval_at_one())
}

/// Check the subadditivity identity for a sublevel triple `a <= b <= c`:
/// `P(X_c, X_b) + P(X_b, X_a)` must equal `P(X_c, X_a) + (1 + λ) Q` for some
/// series `Q` with nonnegative coefficients. With homology truncated to
/// degrees zero and one the identity is decided through degree one.
pub fn lemma_pl_check(
    complex: &FilteredComplex,
    a: f64,
    b: f64,
    c: f64,
) -> Result<bool, MorseError> {
    if !(a <= b && b <= c) {
        return Err(MorseError::UnorderedLevels { a, b, c });
    }
    let upper = complex.poincare_pair(c, b)?;
    let middle = complex.poincare_pair(b, a)?;
    let whole = complex.poincare_pair(c, a)?;
    let sum = upper.add(&middle);
    let diff = match sum.sub_checked(&whole) {
        Ok(d) => d,
        Err(SeriesError::NegativeCoefficient { .. }) => return Ok(false),
        Err(_) => return Ok(false),
    };
    // diff = (1 + λ) Q truncated past degree one forces Q's constant term to
    // be diff's, and the degree one coefficient can only absorb the rest if
    // it is at least that constant term.
    Ok(diff.coeff(1) >= diff.coeff(0))
}

/// Index data of one critical level inside a [`MorseReport`].
#[derive(Debug, Clone, PartialEq)]
pub struct LevelIndexRow {
    pub energy: f64,
    pub eps: f64,
    pub index: FormalSeries,
    /// Enumeration indices sitting on this level.
    pub members: Vec<usize>,
    /// Whether halving the strip width reproduces the same series.
    pub eps_independent: bool,
}

/// Index data of one enumerated geodesic inside a [`MorseReport`].
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicIndexRow {
    pub which: usize,
    pub energy: f64,
    pub tie: bool,
    pub index: Option<FormalSeries>,
    pub multiplicity: Option<u64>,
}

/// Outcome of the Morse relation check on a sampled path space.
#[derive(Debug, Clone, PartialEq)]
pub struct MorseReport {
    pub levels: Vec<LevelIndexRow>,
    pub geodesics: Vec<GeodesicIndexRow>,
    /// Sum of all level index series.
    pub total_index: FormalSeries,
    /// Poincaré series of the whole sampled space; the model expects `1`.
    pub space_series: FormalSeries,
    /// Measured essential component count of the sampled space.
    pub essential_components: usize,
    /// `(total - space) / (1 + λ)` when that division is exact and
    /// nonnegative.
    pub quotient: Option<FormalSeries>,
    pub violations: Vec<String>,
}

impl MorseReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Compute level indices with automatic clean strip widths (at most
/// `eps_cap`, at most 0.45 of the gap to the nearest other level), attribute
/// them to geodesics where levels are untied, and check the Morse relation
/// `Σ index - P(space) = (1 + λ) Q, Q >= 0` against the sampled complex.
pub fn morse_relation_check(
    complex: &FilteredComplex,
    enumeration: &[Geodesic],
    eps_cap: f64,
) -> Result<MorseReport, MorseError> {
    if !(eps_cap > 0.0) || !eps_cap.is_finite() {
        return Err(MorseError::InvalidEpsilon(eps_cap));
    }
    let grouped = critical_levels(enumeration);
    let level_values: Vec<f64> = grouped.iter().map(|l| l.energy).collect();
    let mut violations = Vec::new();

    let mut levels = Vec::with_capacity(grouped.len());
    let mut total_index = FormalSeries::zero();
    for (i, level) in grouped.iter().enumerate() {
        let mut eps = eps_cap;
        for (j, other) in grouped.iter().enumerate() {
            if i != j {
                eps = eps.min(0.45 * (other.energy - level.energy).abs());
            }
        }
        let index = index_of_level(complex, &level_values, level.energy, eps)?;
        let eps_independent =
            epsilon_independent(complex, &level_values, level.energy, eps, 0.5 * eps)?;
        if !eps_independent {
            violations.push(format!(
                "index at level {} changes between strip widths {} and {}",
                level.energy,
                eps,
                0.5 * eps
            ));
        }
        total_index = total_index.add(&index);
        levels.push(LevelIndexRow {
            energy: level.energy,
            eps,
            index,
            members: level.members.clone(),
            eps_independent,
        });
    }

    let mut geodesics = Vec::with_capacity(enumeration.len());
    for (which, g) in enumeration.iter().enumerate() {
        let host = grouped
            .iter()
            .zip(&levels)
            .find(|(group, _)| group.members.contains(&which))
            .map(|(group, row)| (group.members.len(), row));
        let (tied, index) = match host {
            Some((1, row)) => (false, Some(row.index.clone())),
            Some((_, _)) => (true, None),
            None => (true, None),
        };
        geodesics.push(GeodesicIndexRow {
            which,
            energy: g.energy,
            tie: tied,
            index: index.clone(),
            multiplicity: index.map(|s| s.eval_at_one()),
        });
    }

    let essential_components = complex.sublevel_betti(f64::INFINITY, 0)?;
    let space_series = FormalSeries::one();
    if essential_components != 1 {
        violations.push(format!(
            "sampled space has {essential_components} essential components, the model expects 1"
        ));
    }

    let quotient = match total_index.sub_checked(&space_series) {
        Err(e) => {
            violations.push(format!("total index minus space series fails: {e}"));
            None
        }
        Ok(diff) => match diff.divide_one_plus_lambda() {
            Ok(q) => Some(q),
            Err(e) => {
                violations.push(format!("Morse relation division fails: {e}"));
                None
            }
        },
    };

    Ok(MorseReport {
        levels,
        geodesics,
        total_index,
        space_series,
        essential_components,
        quotient,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geodesic::GeodesicKind;

    /// Two vertices at level 1 joined through a third at level 2 by two
    /// edges: one component and one cycle appear, with indices 2 and λ.
    fn toy_complex() -> FilteredComplex {
        let mut c = FilteredComplex::new(vec![1.0, 1.0, 2.0]).unwrap();
        c.add_edge(0, 2).unwrap();
        c.add_edge(1, 2).unwrap();
        c
    }

    fn fake_geodesic(energy: f64) -> Geodesic {
        Geodesic {
            kind: GeodesicKind::Broken,
            development_angle: None,
            length: energy.sqrt(),
            energy,
            tie: false,
        }
    }

    #[test]
    fn level_grouping_respects_tolerance() {
        let enumeration = vec![
            fake_geodesic(1.0),
            fake_geodesic(1.0 + 1e-12),
            fake_geodesic(2.0),
        ];
        let levels = critical_levels(&enumeration);
        assert_eq!(levels.len(), 2);
        assert_eq!(levels[0].members, vec![0, 1]);
        assert_eq!(levels[1].members, vec![2]);
    }

    #[test]
    fn index_of_level_checks_cleanliness() {
        let c = toy_complex();
        let levels = [1.0, 2.0];
        assert_eq!(
            index_of_level(&c, &levels, 1.0, 0.2).unwrap(),
            FormalSeries::from_coeffs(&[(0, 2)])
        );
        assert_eq!(
            index_of_level(&c, &levels, 2.0, 0.2).unwrap(),
            FormalSeries::monomial(1, 1)
        );
        assert_eq!(
            index_of_level(&c, &levels, 1.0, 1.0),
            Err(MorseError::DirtyStrip {
                level: 1.0,
                eps: 1.0,
                conflict: 2.0
            })
        );
        assert!(matches!(
            index_of_level(&c, &levels, 1.0, 0.0),
            Err(MorseError::InvalidEpsilon(_))
        ));
    }

    #[test]
    fn epsilon_independence_on_the_toy_complex() {
        let c = toy_complex();
        let levels = [1.0, 2.0];
        assert!(epsilon_independent(&c, &levels, 1.0, 0.2, 0.35).unwrap());
        assert!(epsilon_independent(&c, &levels, 2.0, 0.2, 0.1).unwrap());
    }

    #[test]
    fn geodesic_indices_and_ties() {
        let c = toy_complex();
        let enumeration = vec![fake_geodesic(1.0), fake_geodesic(2.0)];
        assert_eq!(
            index_of_geodesic(&c, &enumeration, 0, 0.2).unwrap(),
            FormalSeries::from_coeffs(&[(0, 2)])
        );
        assert_eq!(
            multiplicity_of_geodesic(&c, &enumeration, 1, 0.2).unwrap(),
            1
        );
        assert!(matches!(
            index_of_geodesic(&c, &enumeration, 7, 0.2),
            Err(MorseError::GeodesicOutOfRange { which: 7, count: 2 })
        ));

        let tied = vec![fake_geodesic(1.0), fake_geodesic(1.0), fake_geodesic(2.0)];
        assert!(matches!(
            index_of_geodesic(&c, &tied, 0, 0.2),
            Err(MorseError::TiedLevel { which: 0, .. })
        ));
    }

    #[test]
    fn lemma_holds_on_the_toy_complex() {
        let c = toy_complex();
        assert!(lemma_pl_check(&c, 0.5, 1.5, 2.5).unwrap());
        assert!(lemma_pl_check(&c, 0.0, 0.0, 2.5).unwrap());
        assert!(lemma_pl_check(&c, 0.5, 2.5, 2.5).unwrap());
        assert!(matches!(
            lemma_pl_check(&c, 2.0, 1.0, 3.0),
            Err(MorseError::UnorderedLevels { .. })
        ));
    }

    #[test]
    fn relation_check_on_the_toy_complex() {
        let c = toy_complex();
        let enumeration = vec![fake_geodesic(1.0), fake_geodesic(2.0)];
        let report = morse_relation_check(&c, &enumeration, 0.4).unwrap();
        assert!(report.holds(), "violations: {:?}", report.violations);
        assert_eq!(report.levels.len(), 2);
        assert_eq!(report.levels[0].index, FormalSeries::from_coeffs(&[(0, 2)]));
        assert_eq!(report.levels[1].index, FormalSeries::monomial(1, 1));
        // eps is capped by 0.45 of the unit gap between the levels.
        assert!((report.levels[0].eps - 0.4).abs() < 1e-15);
        assert_eq!(
            report.total_index,
            FormalSeries::from_coeffs(&[(0, 2), (1, 1)])
        );
        assert_eq!(report.essential_components, 1);
        assert_eq!(report.quotient, Some(FormalSeries::one()));
        assert_eq!(report.geodesics[0].multiplicity, Some(2));
        assert_eq!(report.geodesics[1].multiplicity, Some(1));
    }

    #[test]
    fn relation_check_reports_violations() {
        // Two separate vertices: two essential components, and the total
        // index 2 leaves remainder after subtracting the space series.
        let c = FilteredComplex::new(vec![1.0, 1.0]).unwrap();
        let enumeration = vec![fake_geodesic(1.0), fake_geodesic(1.0)];
        let report = morse_relation_check(&c, &enumeration, 0.3).unwrap();
        assert!(!report.holds());
        assert_eq!(report.essential_components, 2);
        assert_eq!(report.quotient, None);
        assert_eq!(report.violations.len(), 2);
        assert!(report.geodesics.iter().all(|g| g.tie));
    }
}
