//! Filtered simplicial complexes of dimension at most two, over GF(2).
//!
//! Filtration values live on vertices; an edge or triangle appears when its
//! last vertex does. Supported queries: Betti numbers of sublevel sets, Betti
//! numbers of sublevel pairs (upper set relative to lower set), the Poincaré
//! polynomial of a pair, degree zero persistence with the elder rule, and
//! Betti curves. Degrees above one are out of scope: the complexes built
//! here sample path spaces whose relevant homology sits in degrees zero and
//! one.

use std::collections::HashMap;

use thiserror::Error;

use crate::path::{DiscretePath, PathError};
use crate::series::FormalSeries;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HomologyError {
    #[error("filtration value at vertex {index} must be finite, got {value}")]
    NonFiniteFiltration { index: usize, value: f64 },
    #[error("vertex {got} out of range, complex has {count} vertices")]
    VertexOutOfRange { got: usize, count: usize },
    #[error("self loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge ({0}, {1}) already present")]
    DuplicateEdge(usize, usize),
    #[error("triangle ({0}, {1}, {2}) already present")]
    DuplicateTriangle(usize, usize, usize),
    #[error("triangle needs edge ({0}, {1}) first")]
    MissingFace(usize, usize),
    #[error("homology degree {0} not supported, only 0 and 1")]
    UnsupportedDegree(usize),
    #[error("relative window needs lower <= upper, got ({lower}, {upper})")]
    InvalidWindow { lower: f64, upper: f64 },
    #[error("a Rips complex needs at least one sample path")]
    NoSamples,
    #[error("Rips scale must be positive and finite, got {0}")]
    InvalidScale(f64),
    #[error(transparent)]
    Path(#[from] PathError),
}

/// Simplicial complex with vertex-borne filtration, dimension at most two.
#[derive(Debug, Clone, PartialEq)]
pub struct FilteredComplex {
    vertex_filt: Vec<f64>,
    edges: Vec<([usize; 2], f64)>,
    triangles: Vec<([usize; 3], f64)>,
    edge_ids: HashMap<[usize; 2], usize>,
    triangle_ids: HashMap<[usize; 3], usize>,
}

impl FilteredComplex {
    pub fn new(vertex_filtrations: Vec<f64>) -> Result<Self, HomologyError> {
        for (index, &value) in vertex_filtrations.iter().enumerate() {
            if !value.is_finite() {
                return Err(HomologyError::NonFiniteFiltration { index, value });
            }
        }
        Ok(Self {
            vertex_filt: vertex_filtrations,
            edges: Vec::new(),
            triangles: Vec::new(),
            edge_ids: HashMap::new(),
            triangle_ids: HashMap::new(),
        })
    }

    fn check_vertex(&self, v: usize) -> Result<(), HomologyError> {
        if v >= self.vertex_filt.len() {
            return Err(HomologyError::VertexOutOfRange {
                got: v,
                count: self.vertex_filt.len(),
            });
        }
        Ok(())
    }

    /// Insert an edge; its filtration value is the max of its endpoints'.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<usize, HomologyError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(HomologyError::SelfLoop(u));
        }
        let key = [u.min(v), u.max(v)];
        if self.edge_ids.contains_key(&key) {
            return Err(HomologyError::DuplicateEdge(key[0], key[1]));
        }
        let filt = self.vertex_filt[u].max(self.vertex_filt[v]);
        let id = self.edges.len();
        self.edges.push((key, filt));
        self.edge_ids.insert(key, id);
        Ok(id)
    }

    /// Insert a triangle; all three edges must already be present.
    pub fn add_triangle(&mut self, u: usize, v: usize, w: usize) -> Result<usize, HomologyError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        self.check_vertex(w)?;
        if u == v || v == w || u == w {
            return Err(HomologyError::SelfLoop(if u == v { u } else { w }));
        }
        let mut key = [u, v, w];
        key.sort_unstable();
        if self.triangle_ids.contains_key(&key) {
            return Err(HomologyError::DuplicateTriangle(key[0], key[1], key[2]));
        }
        for face in [[key[0], key[1]], [key[0], key[2]], [key[1], key[2]]] {
            if !self.edge_ids.contains_key(&face) {
                return Err(HomologyError::MissingFace(face[0], face[1]));
            }
        }
        let filt = self.vertex_filt[key[0]]
            .max(self.vertex_filt[key[1]])
            .max(self.vertex_filt[key[2]]);
        let id = self.triangles.len();
        self.triangles.push((key, filt));
        self.triangle_ids.insert(key, id);
        Ok(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_filt.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn vertex_filtration(&self, v: usize) -> Result<f64, HomologyError> {
        self.check_vertex(v)?;
        Ok(self.vertex_filt[v])
    }

    pub fn vertex_filtrations(&self) -> &[f64] {
        &self.vertex_filt
    }

    pub fn edges(&self) -> impl Iterator<Item = ([usize; 2], f64)> + '_ {
        self.edges.iter().copied()
    }

    pub fn triangles(&self) -> impl Iterator<Item = ([usize; 3], f64)> + '_ {
        self.triangles.iter().copied()
    }

    /// Sorted distinct filtration values over all simplices.
    pub fn filtration_values(&self) -> Vec<f64> {
        let mut values: Vec<f64> = self.vertex_filt.clone();
        values.extend(self.edges.iter().map(|(_, f)| *f));
        values.extend(self.triangles.iter().map(|(_, f)| *f));
        values.sort_by(f64::total_cmp);
        values.dedup();
        values
    }

    /// Betti number of the sublevel complex at `level` in degree `q`.
    pub fn sublevel_betti(&self, level: f64, q: usize) -> Result<usize, HomologyError> {
        self.relative_betti(level, f64::NEG_INFINITY, q)
    }

    /// Betti number of the pair (sublevel at `upper`, sublevel at `lower`).
    pub fn relative_betti(&self, upper: f64, lower: f64, q: usize) -> Result<usize, HomologyError> {
        if q > 1 {
            return Err(HomologyError::UnsupportedDegree(q));
        }
        let (v, e, rank1, rank2) = self.relative_ranks(upper, lower)?;
        Ok(match q {
            0 => v - rank1,
            _ => e - rank1 - rank2,
        })
    }

    /// Poincaré polynomial of the pair: `β0 + β1 λ`.
    pub fn poincare_pair(&self, upper: f64, lower: f64) -> Result<FormalSeries, HomologyError> {
        let (v, e, rank1, rank2) = self.relative_ranks(upper, lower)?;
        let b0 = (v - rank1) as u64;
        let b1 = (e - rank1 - rank2) as u64;
        Ok(FormalSeries::from_coeffs(&[(0, b0), (1, b1)]))
    }

    /// Dimensions and boundary ranks of the quotient chain complex: simplices
    /// with filtration in `(lower, upper]`, with faces inside the lower
    /// sublevel set killed.
    fn relative_ranks(
        &self,
        upper: f64,
        lower: f64,
    ) -> Result<(usize, usize, usize, usize), HomologyError> {
        if !(lower <= upper) {
            return Err(HomologyError::InvalidWindow { lower, upper });
        }
        let in_window = |f: f64| f > lower && f <= upper;
        let mut vertex_id = vec![usize::MAX; self.vertex_filt.len()];
        let mut v_count = 0usize;
        for (i, &f) in self.vertex_filt.iter().enumerate() {
            if in_window(f) {
                vertex_id[i] = v_count;
                v_count += 1;
            }
        }
        let mut edge_id = vec![usize::MAX; self.edges.len()];
        let mut e_count = 0usize;
        let mut d1: Vec<Vec<u32>> = Vec::new();
        for (i, &([a, b], f)) in self.edges.iter().enumerate() {
            if !in_window(f) {
                continue;
            }
            edge_id[i] = e_count;
            e_count += 1;
            let mut col = Vec::with_capacity(2);
            // Endpoints at or below `lower` lie in the killed subcomplex.
            for v in [a, b] {
                if vertex_id[v] != usize::MAX {
                    col.push(vertex_id[v] as u32);
                }
            }
            col.sort_unstable();
            d1.push(col);
        }
        let mut d2: Vec<Vec<u32>> = Vec::new();
        for &([a, b, c], f) in &self.triangles {
            if !in_window(f) {
                continue;
            }
            let mut col = Vec::with_capacity(3);
            for face in [[a, b], [a, c], [b, c]] {
                let idx = self.edge_ids[&face];
                if edge_id[idx] != usize::MAX {
                    col.push(edge_id[idx] as u32);
                }
            }
            col.sort_unstable();
            d2.push(col);
        }
        Ok((v_count, e_count, rank_gf2(d1), rank_gf2(d2)))
    }

    /// Betti numbers of sublevel sets as a function of the level.
    pub fn betti_curve(&self, q: usize) -> Result<BettiCurve, HomologyError> {
        let breakpoints = self.filtration_values();
        let mut values = Vec::with_capacity(breakpoints.len());
        for &t in &breakpoints {
            values.push(self.sublevel_betti(t, q)?);
        }
        Ok(BettiCurve {
            degree: q,
            breakpoints,
            values,
        })
    }

    /// Degree zero persistence of the filtration, elder rule: at each merge
    /// the younger component dies. Components never merged have no death.
    /// A vertex joining an older component at its own birth level leaves a
    /// zero length pair.
    pub fn persistence0(&self) -> PersistencePairs {
        let n = self.vertex_filt.len();
        let mut vorder: Vec<usize> = (0..n).collect();
        vorder.sort_by(|&a, &b| {
            self.vertex_filt[a]
                .total_cmp(&self.vertex_filt[b])
                .then(a.cmp(&b))
        });
        let mut eorder: Vec<usize> = (0..self.edges.len()).collect();
        eorder.sort_by(|&a, &b| {
            self.edges[a]
                .1
                .total_cmp(&self.edges[b].1)
                .then(a.cmp(&b))
        });

        let mut parent: Vec<usize> = (0..n).collect();
        // (birth level, birth vertex) per root; the lexicographic elder wins.
        let birth: Vec<(f64, usize)> = (0..n).map(|v| (self.vertex_filt[v], v)).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }

        let mut pairs = Vec::new();
        for &ei in &eorder {
            let ([a, b], t) = self.edges[ei];
            let ra = find(&mut parent, a);
            let rb = find(&mut parent, b);
            if ra == rb {
                continue;
            }
            let (elder, younger) = if birth[ra] <= birth[rb] {
                (ra, rb)
            } else {
                (rb, ra)
            };
            pairs.push(PersistencePair {
                birth: birth[younger].0,
                death: Some(t),
            });
            parent[younger] = elder;
        }
        for &v in &vorder {
            if find(&mut parent, v) == v {
                pairs.push(PersistencePair {
                    birth: birth[v].0,
                    death: None,
                });
            }
        }
        pairs.sort_by(|a, b| {
            a.birth
                .total_cmp(&b.birth)
                .then(compare_death(a.death, b.death))
        });
        PersistencePairs { pairs }
    }
}

fn compare_death(a: Option<f64>, b: Option<f64>) -> std::cmp::Ordering {
    match (a, b) {
        (None, None) => std::cmp::Ordering::Equal,
        (None, Some(_)) => std::cmp::Ordering::Greater,
        (Some(_), None) => std::cmp::Ordering::Less,
        (Some(x), Some(y)) => x.total_cmp(&y),
    }
}

/// Rank over GF(2) of a sparse column family, by left-to-right reduction on
/// the lowest set entry.
fn rank_gf2(mut cols: Vec<Vec<u32>>) -> usize {
    let mut owner: HashMap<u32, usize> = HashMap::new();
    let mut rank = 0usize;
    for j in 0..cols.len() {
        loop {
            let Some(&low) = cols[j].last() else {
                break;
            };
            match owner.get(&low) {
                None => {
                    owner.insert(low, j);
                    rank += 1;
                    break;
                }
                Some(&k) => {
                    let pivot = std::mem::take(&mut cols[k]);
                    xor_sorted(&mut cols[j], &pivot);
                    cols[k] = pivot;
                }
            }
        }
    }
    rank
}

/// Symmetric difference of two ascending index lists, in place on the left.
fn xor_sorted(target: &mut Vec<u32>, other: &[u32]) {
    let mut out = Vec::with_capacity(target.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() && j < other.len() {
        match target[i].cmp(&other[j]) {
            std::cmp::Ordering::Less => {
                out.push(target[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(other[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&target[i..]);
    out.extend_from_slice(&other[j..]);
    *target = out;
}

/// One degree zero bar.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PersistencePair {
    pub birth: f64,
    pub death: Option<f64>,
}

/// All degree zero bars, sorted by (birth, death).
#[derive(Debug, Clone, PartialEq)]
pub struct PersistencePairs {
    pairs: Vec<PersistencePair>,
}

impl PersistencePairs {
    pub fn pairs(&self) -> &[PersistencePair] {
        &self.pairs
    }

    pub fn essential_count(&self) -> usize {
        self.pairs.iter().filter(|p| p.death.is_none()).count()
    }

    /// Number of components alive at `level`.
    pub fn components_alive_at(&self, level: f64) -> usize {
        self.pairs
            .iter()
            .filter(|p| p.birth <= level && p.death.map_or(true, |d| d > level))
            .count()
    }

    /// Deaths with strictly positive persistence inside `[lo, hi]`. Zero
    /// length bars record attachment order, not merges of separate
    /// components, so they are not counted.
    pub fn positive_deaths_in(&self, lo: f64, hi: f64) -> usize {
        self.pairs
            .iter()
            .filter(|p| match p.death {
                Some(d) => d > p.birth && (lo..=hi).contains(&d),
                None => false,
            })
            .count()
    }
}

/// Betti numbers of sublevel sets, as a right-continuous step function.
#[derive(Debug, Clone, PartialEq)]
pub struct BettiCurve {
    pub degree: usize,
    pub breakpoints: Vec<f64>,
    pub values: Vec<usize>,
}

impl BettiCurve {
    pub fn value_at(&self, level: f64) -> usize {
        match self
            .breakpoints
            .partition_point(|&b| b <= level)
            .checked_sub(1)
        {
            Some(i) => self.values[i],
            None => 0,
        }
    }
}

/// Build the Rips complex of a path sample: one vertex per path, filtered by
/// discrete energy; edges between paths within `scale` in the uniform path
/// distance; triangles wherever all three edges are present.
pub fn build_rips(samples: &[DiscretePath], scale: f64) -> Result<FilteredComplex, HomologyError> {
    if samples.is_empty() {
        return Err(HomologyError::NoSamples);
    }
    if !scale.is_finite() || scale <= 0.0 {
        return Err(HomologyError::InvalidScale(scale));
    }
    let energies: Vec<f64> = samples.iter().map(|p| p.discrete_energy()).collect();
    let mut complex = FilteredComplex::new(energies)?;
    let n = samples.len();
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            if samples[i].path_distance_within(&samples[j], scale)?.is_some() {
                complex.add_edge(i, j)?;
                adjacency[i].push(j);
                adjacency[j].push(i);
            }
        }
    }
    for list in &mut adjacency {
        list.sort_unstable();
    }
    for i in 0..n {
        for &j in &adjacency[i] {
            if j <= i {
                continue;
            }
            // Common neighbors above j close a triangle i < j < k.
            let (mut a, mut b) = (0usize, 0usize);
            let (ni, nj) = (&adjacency[i], &adjacency[j]);
            while a < ni.len() && b < nj.len() {
                match ni[a].cmp(&nj[b]) {
                    std::cmp::Ordering::Less => a += 1,
                    std::cmp::Ordering::Greater => b += 1,
                    std::cmp::Ordering::Equal => {
                        let k = ni[a];
                        if k > j {
                            complex.add_triangle(i, j, k)?;
                        }
                        a += 1;
                        b += 1;
                    }
                }
            }
        }
    }
    Ok(complex)
}
