//! Geodesics and discrete Morse data on flat cones.
//!
//! A cone is the plane with a wedge removed or inserted: polar coordinates
//! `(r, theta)` with angles taken modulo a total apex angle `alpha`. The crate
//! enumerates geodesics between two fixed points, runs a midpoint-based curve
//! shortening flow on discrete paths, builds a filtered Rips complex on the
//! flow output, and checks the resulting index series against sublevel
//! homology over GF(2). `oracle` holds independent slow checks used by the
//! test suites.

pub mod cone;
pub mod geodesic;
pub mod homology;
pub mod morse;
pub mod oracle;
pub mod path;
pub mod series;

pub use cone::{ConeError, ConePoint, ConeSurface, PlanarPoint, Route};
pub use geodesic::{Geodesic, GeodesicError, GeodesicKind};
pub use homology::{BettiCurve, FilteredComplex, HomologyError, PersistencePair, PersistencePairs};
pub use morse::{GeodesicIndexRow, LevelIndexRow, MorseError, MorseReport};
pub use oracle::{GenericScenario, GridSpec, OracleError, SheetPath};
pub use path::{DiscretePath, FlowResult, LimitClass, PathError, SampleStrategy};
pub use series::{FormalSeries, SeriesError};
