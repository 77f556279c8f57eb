//! Pseudo-Boolean objectives `f: {0,1}^N -> R` as exhaustive value tables,
//! together with the random problem families used in the experiments.
//!
//! Bit `i` of a string's integer value is the value of variable `z(i)`, with
//! bit 0 on qubit 0. Tables are dense (`2^N` entries), which caps `N` at
//! [`MAX_BITS`] to bound memory.

use nalgebra::DMatrix;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rand_distr::{Distribution, StandardNormal};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported problem size for dense tables (16M entries).
pub const MAX_BITS: u8 = 24;

fn check_bits(n_bits: u8) -> Result<()> {
    if !(1..=MAX_BITS).contains(&n_bits) {
        return Err(Error::BitsOutOfRange(n_bits));
    }
    Ok(())
}

/// A length-`N` bit string identified with its integer value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitString {
    value: u32,
    n_bits: u8,
}

impl BitString {
    pub fn new(value: u32, n_bits: u8) -> Result<Self> {
        check_bits(n_bits)?;
        if u64::from(value) >= 1u64 << n_bits {
            return Err(Error::ValueOutOfRange { value, n_bits });
        }
        Ok(Self { value, n_bits })
    }

    pub(crate) fn from_index(index: usize, n_bits: u8) -> Self {
        debug_assert!(index < 1usize << n_bits);
        Self {
            value: index as u32,
            n_bits,
        }
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn n_bits(&self) -> u8 {
        self.n_bits
    }

    pub fn index(&self) -> usize {
        self.value as usize
    }

    /// Value of variable `z(i)`.
    pub fn bit(&self, i: u8) -> bool {
        debug_assert!(i < self.n_bits);
        self.value >> i & 1 == 1
    }

    /// The Hamming-1 neighbor obtained by flipping bit `i`.
    pub fn flipped(&self, i: u8) -> Self {
        debug_assert!(i < self.n_bits);
        Self {
            value: self.value ^ (1 << i),
            n_bits: self.n_bits,
        }
    }

    /// All `N` Hamming-1 neighbors, in bit-position order.
    pub fn neighbors(&self) -> impl Iterator<Item = BitString> + '_ {
        (0..self.n_bits).map(|i| self.flipped(i))
    }
}

impl std::fmt::Display for BitString {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.value)
    }
}

// Serialized as the decimal value, matching the CSV/JSON output convention.
impl Serialize for BitString {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_u32(self.value)
    }
}

/// Exhaustive value table of an objective, with cached extrema and norms.
#[derive(Clone, Debug)]
pub struct ObjectiveTable {
    n_bits: u8,
    values: Vec<f64>,
    f_min: f64,
    f_max: f64,
    mean: f64,
    sup_norm: f64,
    c_sup_norm: f64,
    argmin: Vec<BitString>,
}

impl ObjectiveTable {
    /// Build a table from raw values (`values.len()` must be `2^n_bits`).
    pub fn from_values(n_bits: u8, values: Vec<f64>) -> Result<Self> {
        check_bits(n_bits)?;
        let dim = 1usize << n_bits;
        if values.len() != dim {
            return Err(Error::InvalidParam(format!(
                "table length {} does not match 2^{}",
                values.len(),
                n_bits
            )));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidParam(format!("non-finite value {v}")));
        }
        let mut f_min = f64::INFINITY;
        let mut f_max = f64::NEG_INFINITY;
        let mut sum = 0.0;
        let mut sup_norm: f64 = 0.0;
        for &v in &values {
            f_min = f_min.min(v);
            f_max = f_max.max(v);
            sum += v;
            sup_norm = sup_norm.max(v.abs());
        }
        let mean = sum / dim as f64;
        let c_sup_norm = values
            .iter()
            .map(|v| (v - mean).abs())
            .fold(0.0f64, f64::max);
        let argmin = values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v == f_min)
            .map(|(z, _)| BitString::from_index(z, n_bits))
            .collect();
        Ok(Self {
            n_bits,
            values,
            f_min,
            f_max,
            mean,
            sup_norm,
            c_sup_norm,
            argmin,
        })
    }

    pub fn n_bits(&self) -> u8 {
        self.n_bits
    }

    /// Table size `2^N`; never zero.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, z: BitString) -> f64 {
        debug_assert_eq!(z.n_bits(), self.n_bits);
        self.values[z.index()]
    }

    pub fn value_at(&self, index: usize) -> f64 {
        self.values[index]
    }

    pub fn f_min(&self) -> f64 {
        self.f_min
    }

    pub fn f_max(&self) -> f64 {
        self.f_max
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// `max_z |f(z)|`.
    pub fn sup_norm(&self) -> f64 {
        self.sup_norm
    }

    /// `max_z |f(z) - mean(f)|`, the sup-norm of the traceless part.
    pub fn c_sup_norm(&self) -> f64 {
        self.c_sup_norm
    }

    /// All strings attaining `f_min`, ascending.
    pub fn argmin_set(&self) -> &[BitString] {
        &self.argmin
    }
}

/// Traceless shift `c(z) = f(z) - mean(f)`, the phase-separator generator.
#[derive(Clone, Debug)]
pub struct TracelessObjective {
    n_bits: u8,
    c_values: Vec<f64>,
    c_sup_norm: f64,
}

impl TracelessObjective {
    pub fn n_bits(&self) -> u8 {
        self.n_bits
    }

    pub fn values(&self) -> &[f64] {
        &self.c_values
    }

    pub fn sup_norm(&self) -> f64 {
        self.c_sup_norm
    }
}

/// Subtract the mean so the generator sums to zero over all strings.
pub fn traceless(table: &ObjectiveTable) -> TracelessObjective {
    let mean = table.mean();
    let c_values: Vec<f64> = table.values().iter().map(|v| v - mean).collect();
    let c_sup_norm = c_values.iter().map(|v| v.abs()).fold(0.0f64, f64::max);
    TracelessObjective {
        n_bits: table.n_bits(),
        c_values,
        c_sup_norm,
    }
}

/// Rescale so `max_z |f(z)| = 1`. Rejects the all-zero table.
pub fn normalize_sup(table: &ObjectiveTable) -> Result<ObjectiveTable> {
    let s = table.sup_norm();
    if s <= 0.0 {
        return Err(Error::ZeroSupNorm);
    }
    let values = table.values().iter().map(|v| v / s).collect();
    ObjectiveTable::from_values(table.n_bits(), values)
}

/// Undirected simple graph on `n_vertices` vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n_vertices: usize,
    edges: Vec<(u32, u32)>,
}

impl Graph {
    /// Edges are normalized to `(min, max)` and sorted; self-loops and
    /// duplicates are rejected.
    pub fn new(n_vertices: usize, edges: Vec<(u32, u32)>) -> Result<Self> {
        let mut norm: Vec<(u32, u32)> = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            if a as usize >= n_vertices || b as usize >= n_vertices {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a}, {b}) has endpoint outside 0..{n_vertices}"
                )));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {a}")));
            }
            norm.push((a.min(b), a.max(b)));
        }
        norm.sort_unstable();
        if norm.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph("duplicate edge".into()));
        }
        Ok(Self {
            n_vertices,
            edges: norm,
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }
}

/// i.i.d. uniform values on `[lo, hi)`, reproducible per seed.
pub fn gen_uniform(n_bits: u8, seed: u64, lo: f64, hi: f64) -> Result<ObjectiveTable> {
    check_bits(n_bits)?;
    if lo >= hi || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::EmptyRange { lo, hi });
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let values = (0..1usize << n_bits)
        .map(|_| rng.random_range(lo..hi))
        .collect();
    ObjectiveTable::from_values(n_bits, values)
}

/// Values drawn from an even mixture of uniforms on the outer 20% bands of
/// `[lo, hi]`, favoring the boundaries.
pub fn gen_bimodal(n_bits: u8, seed: u64, lo: f64, hi: f64) -> Result<ObjectiveTable> {
    check_bits(n_bits)?;
    if lo >= hi || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::EmptyRange { lo, hi });
    }
    let band = 0.2 * (hi - lo);
    let mut rng = StdRng::seed_from_u64(seed);
    let values = (0..1usize << n_bits)
        .map(|_| {
            if rng.random_bool(0.5) {
                rng.random_range(lo..lo + band)
            } else {
                rng.random_range(hi - band..hi)
            }
        })
        .collect();
    ObjectiveTable::from_values(n_bits, values)
}

/// Quadratic form `f(z) = sum_{i,j} z(i) M_{ij} z(j)` for a random real
/// symmetric `M` rescaled to unit spectral norm.
pub fn gen_qubo(n_bits: u8, seed: u64) -> Result<ObjectiveTable> {
    check_bits(n_bits)?;
    let n = n_bits as usize;
    let mut rng = StdRng::seed_from_u64(seed);
    let mut a = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = StandardNormal.sample(&mut rng);
        }
    }
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = 0.5 * (a[(i, j)] + a[(j, i)]);
        }
    }
    // Dense eigensolve is cheap at these sizes and gives the spectral norm
    // of a symmetric matrix exactly.
    let spectral = m
        .clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .map(|e| e.abs())
        .fold(0.0f64, f64::max);
    if spectral <= 0.0 {
        return Err(Error::InvalidParam("degenerate zero matrix".into()));
    }
    m /= spectral;
    qubo_table(n_bits, &m)
}

/// Evaluate the quadratic form of an explicit symmetric matrix. Exposed so
/// tests can inject a known `M`.
pub fn qubo_table(n_bits: u8, m: &DMatrix<f64>) -> Result<ObjectiveTable> {
    check_bits(n_bits)?;
    let n = n_bits as usize;
    if m.nrows() != n || m.ncols() != n {
        return Err(Error::InvalidParam(format!(
            "matrix is {}x{}, expected {n}x{n}",
            m.nrows(),
            m.ncols()
        )));
    }
    let dim = 1usize << n_bits;
    let mut values = vec![0.0f64; dim];
    for (z, slot) in values.iter_mut().enumerate() {
        let mut acc = 0.0;
        for i in 0..n {
            if z >> i & 1 == 0 {
                continue;
            }
            for j in 0..n {
                if z >> j & 1 == 1 {
                    acc += m[(i, j)];
                }
            }
        }
        *slot = acc;
    }
    ObjectiveTable::from_values(n_bits, values)
}

/// `f(z) = -|{(i,j) in E : z(i) != z(j)}|`, so that minimizing `f`
/// maximizes the cut.
pub fn gen_maxcut(graph: &Graph) -> Result<ObjectiveTable> {
    let n_bits = u8::try_from(graph.n_vertices())
        .ok()
        .filter(|&n| (1..=MAX_BITS).contains(&n))
        .ok_or(Error::BitsOutOfRange(graph.n_vertices().min(255) as u8))?;
    let dim = 1usize << n_bits;
    let mut values = vec![0.0f64; dim];
    for (z, slot) in values.iter_mut().enumerate() {
        let mut cut = 0u32;
        for &(a, b) in graph.edges() {
            if (z >> a ^ z >> b) & 1 == 1 {
                cut += 1;
            }
        }
        *slot = -f64::from(cut);
    }
    ObjectiveTable::from_values(n_bits, values)
}

/// Erdős–Rényi graph: each unordered pair included independently with
/// probability `edge_prob`, reproducible per seed.
pub fn gen_random_graph(n_vertices: usize, edge_prob: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&edge_prob) {
        return Err(Error::InvalidParam(format!(
            "edge probability {edge_prob} outside [0, 1]"
        )));
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for a in 0..n_vertices {
        for b in a + 1..n_vertices {
            if rng.random_bool(edge_prob) {
                edges.push((a as u32, b as u32));
            }
        }
    }
    Graph::new(n_vertices, edges)
}
