//! The computational stages behind the commands: enumeration, flow batches,
//! sampled-complex assembly, persistence, and the Morse relation check.

use std::fmt;

use conemorse_core::cone::{ConeError, ConePoint, ConeSurface};
use conemorse_core::geodesic::{enumerate_all, Geodesic, GeodesicError, GeodesicKind};
use conemorse_core::homology::{build_rips, FilteredComplex, HomologyError, PersistencePairs};
use conemorse_core::morse::{morse_relation_check, MorseError, MorseReport};
use conemorse_core::path::{
    classify_limit, flow_to_critical, sample_paths, DiscretePath, LimitClass, PathError,
    SampleStrategy,
};

use crate::scenario::Scenario;

/// Half-width of the persistence death window reported around each critical
/// level.
pub const DEATH_WINDOW: f64 = 0.2;

/// Relative energy tolerance used when matching flow limits to enumerated
/// geodesics.
pub const CLASSIFY_TOL: f64 = 1e-6;

/// Cross-basin Rips links are only tolerated within this energy band below
/// the broken level, so basin merges land inside every strip used at that
/// level.
const LINK_BAND: f64 = 0.05;

/// The adaptive scale stays below the tightest cross-chain clearance by this
/// factor.
const SCALE_SAFETY: f64 = 0.9;

/// Upper bound on the adaptive scale, as a fraction of `p_r + q_r`.
const SCALE_CAP: f64 = 0.05;

/// Resolution of the corner-radius and blend sweeps behind connector chains.
const CHAIN_SWEEP: usize = 4096;

/// Bisection depth when raising a bridge rung onto its energy schedule.
const BRIDGE_BISECTIONS: usize = 50;

#[derive(Debug)]
pub enum PipelineError {
    Cone(ConeError),
    Geodesic(GeodesicError),
    Path(PathError),
    Homology(HomologyError),
    Morse(MorseError),
}

impl fmt::Display for PipelineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PipelineError::Cone(e) => write!(f, "cone geometry: {e}"),
            PipelineError::Geodesic(e) => write!(f, "enumeration: {e}"),
            PipelineError::Path(e) => write!(f, "path handling: {e}"),
            PipelineError::Homology(e) => write!(f, "homology: {e}"),
            PipelineError::Morse(e) => write!(f, "morse data: {e}"),
        }
    }
}

impl std::error::Error for PipelineError {}

impl From<ConeError> for PipelineError {
    fn from(e: ConeError) -> Self {
        PipelineError::Cone(e)
    }
}
impl From<GeodesicError> for PipelineError {
    fn from(e: GeodesicError) -> Self {
        PipelineError::Geodesic(e)
    }
}
impl From<PathError> for PipelineError {
    fn from(e: PathError) -> Self {
        PipelineError::Path(e)
    }
}
impl From<HomologyError> for PipelineError {
    fn from(e: HomologyError) -> Self {
        PipelineError::Homology(e)
    }
}
impl From<MorseError> for PipelineError {
    fn from(e: MorseError) -> Self {
        PipelineError::Morse(e)
    }
}

/// Enumerate all geodesics for the scenario, energy-sorted.
pub fn enumerate(scenario: &Scenario) -> Result<Vec<Geodesic>, PipelineError> {
    let (p, q) = scenario.endpoints();
    Ok(enumerate_all(scenario.surface(), p, q)?)
}

/// Outcome of flowing one sampled start.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleRow {
    pub index: usize,
    pub start_energy: f64,
    pub final_energy: f64,
    pub iterations: usize,
    pub converged: bool,
    pub class: LimitClass,
}

/// Batch result of the sampling-and-flow stage.
#[derive(Debug, Clone)]
pub struct FlowBatch {
    pub rows: Vec<SampleRow>,
    pub finals: Vec<DiscretePath>,
    /// Hits per enumerated geodesic, indexed like the enumeration.
    pub histogram: Vec<usize>,
    pub unresolved: usize,
    pub unconverged: usize,
}

/// Sample seeded starts, flow each to a critical point, and classify the
/// limits against the enumeration. Everything runs in sample order.
pub fn flow_batch(
    scenario: &Scenario,
    enumeration: &[Geodesic],
) -> Result<FlowBatch, PipelineError> {
    let (p, q) = scenario.endpoints();
    let starts = sample_paths(
        scenario.surface(),
        p,
        q,
        scenario.segments,
        scenario.samples,
        SampleStrategy::Perturbed {
            amplitude: scenario.amplitude,
        },
        scenario.seed,
    )?;
    let mut rows = Vec::with_capacity(starts.len());
    let mut finals = Vec::with_capacity(starts.len());
    let mut histogram = vec![0usize; enumeration.len()];
    let mut unresolved = 0usize;
    let mut unconverged = 0usize;
    for (index, start) in starts.iter().enumerate() {
        let flow = flow_to_critical(start, scenario.flow_tol, scenario.max_sweeps)?;
        let class = classify_limit(&flow.path, enumeration, CLASSIFY_TOL);
        match class {
            LimitClass::Classical { sheet } => {
                let slot = enumeration.iter().position(
                    |g| matches!(g.kind, GeodesicKind::Classical { sheet: s } if s == sheet),
                );
                if let Some(i) = slot {
                    histogram[i] += 1;
                }
            }
            LimitClass::Broken => {
                let slot = enumeration
                    .iter()
                    .position(|g| matches!(g.kind, GeodesicKind::Broken));
                if let Some(i) = slot {
                    histogram[i] += 1;
                }
            }
            LimitClass::Unresolved => unresolved += 1,
        }
        if !flow.converged {
            unconverged += 1;
        }
        rows.push(SampleRow {
            index,
            start_energy: start.discrete_energy(),
            final_energy: flow.path.discrete_energy(),
            iterations: flow.iterations,
            converged: flow.converged,
            class,
        });
        finals.push(flow.path);
    }
    Ok(FlowBatch {
        rows,
        finals,
        histogram,
        unresolved,
        unconverged,
    })
}

/// Push `cand` unless an already-kept path lies within `radius`.
fn push_dedup(
    kept: &mut Vec<DiscretePath>,
    cand: DiscretePath,
    radius: f64,
) -> Result<(), PathError> {
    for existing in kept.iter() {
        if existing.path_distance_within(&cand, radius)?.is_some() {
            return Ok(());
        }
    }
    kept.push(cand);
    Ok(())
}

/// Connector chain from the broken path down into one classical basin,
/// finely spaced with non-increasing energies.
///
/// The spine is the chord's pinched-corner family: the corner walks outward
/// along the closest-approach ray, so the energy falls from the broken level
/// by closed form while the path keeps the basin's winding. A blend tail
/// then relaxes the last corner parametrization onto the uniform chord
/// sampling. Candidates that would raise the energy are skipped, so grid
/// noise never reads as a merge event.
struct ChainBuilder {
    last: DiscretePath,
    last_energy: f64,
    rungs: Vec<DiscretePath>,
    step: f64,
}

impl ChainBuilder {
    /// Keeps `cand` when it is at least `step` away from the last kept rung
    /// and does not raise the energy. Skipped stretches stay geometrically
    /// short because each sweep advances in small increments.
    fn admit(&mut self, cand: DiscretePath) -> Result<(), PathError> {
        if self.last.path_distance_within(&cand, self.step)?.is_some() {
            return Ok(());
        }
        let energy = cand.discrete_energy();
        if energy > self.last_energy {
            return Ok(());
        }
        self.last = cand.clone();
        self.last_energy = energy;
        self.rungs.push(cand);
        Ok(())
    }
}

/// Raises a sagging rung onto the `target` energy by drawing its innermost
/// node toward the apex. Near the apex every discrete segment into that node
/// folds onto the short developed angle, so its length grows steeply as the
/// node moves inward: the energy climbs to the target while the geometric
/// displacement stays far below the rung spacing. Returns the rung unchanged
/// when it already sits at or above the target.
fn lifted_to(
    surface: ConeSurface,
    base: &DiscretePath,
    target: f64,
) -> Result<DiscretePath, PathError> {
    if base.discrete_energy() >= target {
        return Ok(base.clone());
    }
    let nodes = base.nodes();
    let Some(pivot) = nodes[1..nodes.len() - 1]
        .iter()
        .enumerate()
        .filter(|(_, nd)| !nd.is_vertex())
        .min_by(|a, b| a.1.r().total_cmp(&b.1.r()))
        .map(|(i, _)| i + 1)
    else {
        return Ok(base.clone());
    };
    let pull = |u: f64| -> Result<DiscretePath, PathError> {
        let mut moved = nodes.to_vec();
        let nd = moved[pivot];
        moved[pivot] = if u >= 1.0 {
            ConePoint::vertex()
        } else {
            ConePoint::new(surface, nd.r() * (1.0 - u), nd.theta())
                .expect("shrunk radius stays positive and finite")
        };
        DiscretePath::from_nodes(surface, moved)
    };
    if pull(1.0)?.discrete_energy() <= target {
        return pull(1.0);
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..BRIDGE_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if pull(mid)?.discrete_energy() < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    pull(0.5 * (lo + hi))
}

fn descending_chain(
    surface: ConeSurface,
    p: ConePoint,
    q: ConePoint,
    sheet: i64,
    broken: &DiscretePath,
    chord: &DiscretePath,
    step: f64,
) -> Result<Vec<DiscretePath>, PathError> {
    let segments = broken.segments();
    let n = segments as f64;
    let corner_node = ((n * p.r() / (p.r() + q.r())).round() as usize).clamp(1, segments - 1);
    let reach = p.r().max(q.r());
    let mut family: Vec<(DiscretePath, f64)> = Vec::with_capacity(CHAIN_SWEEP);
    for i in 1..=CHAIN_SWEEP {
        let radius = reach * i as f64 / CHAIN_SWEEP as f64;
        let path = DiscretePath::pinched(surface, p, q, sheet, radius, corner_node, segments)?;
        let energy = path.discrete_energy();
        family.push((path, energy));
    }
    let contact = family
        .iter()
        .enumerate()
        .min_by(|a, b| a.1 .1.total_cmp(&b.1 .1))
        .map(|(i, _)| i)
        .unwrap_or(0);
    family.truncate(contact + 1);

    // The measured profile can dip below its own later values where segments
    // near the apex fold onto short developed angles. Keeping a dipped rung
    // would plant a spurious local minimum, so the spine is the profile's
    // skyline: rungs that top everything after them. Each dropped stretch is
    // then re-crossed at ridge height by lifted bridge rungs on a straight
    // descending schedule between its skyline endpoints.
    let mut keep = vec![false; family.len()];
    let mut running = f64::NEG_INFINITY;
    for (i, (_, energy)) in family.iter().enumerate().rev() {
        if *energy >= running {
            keep[i] = true;
            running = *energy;
        }
    }
    let kept: Vec<usize> = (0..family.len()).filter(|&i| keep[i]).collect();

    let mut builder = ChainBuilder {
        last: broken.clone(),
        last_energy: broken.discrete_energy(),
        rungs: Vec::new(),
        step,
    };
    if let Some(&first) = kept.first() {
        builder.admit(family[first].0.clone())?;
    }
    for pair in kept.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let (e_a, e_b) = (family[a].1, family[b].1);
        for i in a + 1..b {
            let sched = e_a + (e_b - e_a) * (i - a) as f64 / (b - a) as f64;
            builder.admit(lifted_to(surface, &family[i].0, sched)?)?;
        }
        builder.admit(family[b].0.clone())?;
    }
    let tail = builder.last.clone();
    for i in 1..CHAIN_SWEEP {
        let t = i as f64 / CHAIN_SWEEP as f64;
        builder.admit(tail.blend_toward(chord, t)?)?;
    }
    Ok(builder.rungs)
}

/// Smallest distance between rungs of different chains, restricted to pairs
/// whose joining edge would appear below `floor_energy`. `None` when fewer
/// than two chains exist.
fn min_cross_link(
    chains: &[Vec<DiscretePath>],
    energies: &[Vec<f64>],
    floor_energy: f64,
) -> Result<Option<f64>, PathError> {
    let mut best: Option<f64> = None;
    for a in 0..chains.len() {
        for b in a + 1..chains.len() {
            for (i, pa) in chains[a].iter().enumerate() {
                for (j, pb) in chains[b].iter().enumerate() {
                    if energies[a][i].max(energies[b][j]) >= floor_energy {
                        continue;
                    }
                    let cutoff = best.unwrap_or(f64::INFINITY);
                    if let Some(d) = pa.path_distance_within(pb, cutoff)? {
                        best = Some(d);
                    }
                }
            }
        }
    }
    Ok(best)
}

/// Thin a fine chain to roughly `spacing` between kept rungs, walking from
/// the broken end outward.
fn thin_chain(
    broken: &DiscretePath,
    chain: &[DiscretePath],
    spacing: f64,
) -> Result<Vec<DiscretePath>, PathError> {
    let mut kept: Vec<DiscretePath> = Vec::new();
    let mut last = broken.clone();
    for rung in chain {
        if last.path_distance_within(rung, spacing)?.is_none() {
            kept.push(rung.clone());
            last = rung.clone();
        }
    }
    Ok(kept)
}

/// Mean nearest-neighbor path distance over the sample set.
fn mean_nearest_neighbor(samples: &[DiscretePath]) -> Result<f64, PathError> {
    if samples.len() < 2 {
        return Ok(0.0);
    }
    let mut total = 0.0;
    for (i, a) in samples.iter().enumerate() {
        let mut nearest = f64::INFINITY;
        for (j, b) in samples.iter().enumerate() {
            if i == j {
                continue;
            }
            if let Some(d) = a.path_distance_within(b, nearest)? {
                nearest = d;
            }
        }
        total += nearest;
    }
    Ok(total / samples.len() as f64)
}

/// The sampled path complex and everything measured on it.
#[derive(Debug, Clone)]
pub struct MorsePipelineOutput {
    pub enumeration: Vec<Geodesic>,
    pub flow: FlowBatch,
    pub scale: f64,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub triangle_count: usize,
    pub pairs: PersistencePairs,
    /// Per critical level: positive-persistence deaths within
    /// [`DEATH_WINDOW`] of the level.
    pub level_deaths: Vec<(f64, usize)>,
    pub report: MorseReport,
    pub complex: FilteredComplex,
}

/// Full pipeline: enumerate, sample and flow, assemble the sampled complex
/// (exact geodesic samplings, classified flow limits, and connector chains
/// from the broken sampling down into every classical basin), then measure
/// persistence and the Morse relation on it.
///
/// The chains carry the level structure: along each one the energy climbs
/// from the chord to the broken level, so every basin stays one component
/// below the broken energy, and chains of different basins approach each
/// other only where both are nearly broken. The scale is chosen so those
/// approaches become Rips edges only inside [`LINK_BAND`], which makes the
/// basin merges read as deaths just under the broken energy.
pub fn morse_pipeline(scenario: &Scenario) -> Result<MorsePipelineOutput, PipelineError> {
    let (p, q) = scenario.endpoints();
    let surface = scenario.surface();
    let enumeration = enumerate(scenario)?;
    let flow = flow_batch(scenario, &enumeration)?;

    let broken = DiscretePath::vertex_routed(surface, p, q, scenario.segments)?;
    let broken_energy = broken.discrete_energy();
    let mut sheets = Vec::new();
    let mut chords = Vec::new();
    for g in &enumeration {
        if let GeodesicKind::Classical { sheet } = g.kind {
            sheets.push(sheet);
            chords.push(DiscretePath::chord_interpolation(
                surface,
                p,
                q,
                sheet,
                scenario.segments,
            )?);
        }
    }

    let span = scenario.p_r + scenario.q_r;
    let fine_step = span / 1000.0;
    let mut fine_chains = Vec::new();
    let mut fine_energies = Vec::new();
    for (&sheet, chord) in sheets.iter().zip(&chords) {
        let mut chain = descending_chain(surface, p, q, sheet, &broken, chord, fine_step)?;
        chain.push(chord.clone());
        fine_energies.push(chain.iter().map(DiscretePath::discrete_energy).collect::<Vec<_>>());
        fine_chains.push(chain);
    }

    let cap = SCALE_CAP * span;
    let target = match scenario.rips_scale {
        Some(s) => s,
        None => {
            let floor_energy = broken_energy - LINK_BAND;
            match min_cross_link(&fine_chains, &fine_energies, floor_energy)? {
                Some(clearance) => (SCALE_SAFETY * clearance).min(cap),
                None => cap,
            }
        }
    };

    // Exact samplings first, so flow limits collapse onto the
    // representatives whose energies sit exactly on the critical levels.
    let mut vertices: Vec<DiscretePath> = vec![broken.clone()];
    vertices.extend(chords.iter().cloned());
    for chain in &fine_chains {
        let interior = &chain[..chain.len() - 1];
        vertices.extend(thin_chain(&broken, interior, 0.5 * target)?);
    }
    let dedup = 0.25 * target;
    for (row, final_path) in flow.rows.iter().zip(&flow.finals) {
        if row.converged && !matches!(row.class, LimitClass::Unresolved) {
            push_dedup(&mut vertices, final_path.clone(), dedup)?;
        }
    }

    // The default scale is twice the mean nearest-neighbor distance of the
    // sample set; the rung spacing of half the target above makes that land
    // on the target. The target also clamps it from above, so chains stay
    // linked internally while staying mutually separated below the broken
    // level and merging only through it.
    let scale = match scenario.rips_scale {
        Some(s) => s,
        None => {
            let mean = mean_nearest_neighbor(&vertices)?;
            if mean > 0.0 {
                (2.0 * mean).min(target)
            } else {
                cap
            }
        }
    };

    let complex = build_rips(&vertices, scale)?;
    let pairs = complex.persistence0();
    let report = morse_relation_check(&complex, &enumeration, scenario.eps_cap)?;
    let mut level_deaths = Vec::new();
    for row in &report.levels {
        let deaths = pairs.positive_deaths_in(row.energy - DEATH_WINDOW, row.energy + DEATH_WINDOW);
        level_deaths.push((row.energy, deaths));
    }
    Ok(MorsePipelineOutput {
        enumeration,
        flow,
        scale,
        vertex_count: complex.vertex_count(),
        edge_count: complex.edge_count(),
        triangle_count: complex.triangle_count(),
        pairs,
        level_deaths,
        report,
        complex,
    })
}
