//! C interface to `pstar`.
//!
//! Every function returns a [`PstarStatus`]; results go through out-pointers.
//! On failure, [`pstar_last_error`] gives a message for the calling thread.
//! Graphs and sample sets are opaque heap handles released with their
//! `_free` function. Parameters use the natural convention.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pstar::estimators::{self, GradientAscentConfig};
use pstar::{exact, io, mean_field, sampler};
use pstar::{
    Error, Graph, MomentsVector, NaturalParams, NewtonConfig, Phase, SampleSet, SamplerConfig,
};

/// Opaque graph handle.
pub struct PstarGraph(Graph);

/// Opaque set of sampled graphs.
pub struct PstarSampleSet(SampleSet);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PstarStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    TooLarge = 4,
    /// The solver or ascent failed to converge, diverged, or hit separation.
    Numerical = 5,
    /// The parameters are outside the high-temperature phase.
    LowTemperature = 6,
    Io = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PstarPhase {
    High = 0,
    Low = 1,
    Boundary = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PstarStats {
    pub edges: u64,
    pub two_stars: u64,
    pub triangles: u64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PstarParams {
    pub theta1: f64,
    pub theta2: f64,
    pub theta3: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PstarMoments {
    pub mu1: f64,
    pub mu2: f64,
    pub mu3: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PstarSamplerConfig {
    pub n: usize,
    pub num_samples: usize,
    pub burn_in: u64,
    pub thinning: u64,
    pub seed: u64,
    /// Edge probability of the random starting graph; 0 starts empty.
    pub initial_density: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PstarAscentConfig {
    pub step: f64,
    pub max_iter: usize,
    pub init: PstarParams,
    /// Stop once the sup-norm of the gradient drops below this; `<= 0`
    /// disables early stopping.
    pub grad_tol: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PstarEstimate {
    pub theta: PstarParams,
    pub iterations: usize,
    pub converged: bool,
    pub total_time_ms: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> PstarStatus {
    match e {
        Error::Parse { .. } => PstarStatus::Parse,
        Error::TooLarge { .. } => PstarStatus::TooLarge,
        Error::Io(_) => PstarStatus::Io,
        Error::LowTemperatureSuspected | Error::LowTemperatureEncountered { .. } => {
            PstarStatus::LowTemperature
        }
        e if e.is_numerical() => PstarStatus::Numerical,
        _ => PstarStatus::InvalidArgument,
    }
}

enum Failure {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> PstarStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            PstarStatus::Ok
        }
        Ok(Err(Failure::Null(what))) => {
            set_error(&format!("null pointer: {what}"));
            PstarStatus::NullPointer
        }
        Ok(Err(Failure::Lib(e))) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic");
            PstarStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn deref_mut<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or(Failure::Null(what))
}

fn natural(p: &PstarParams) -> NaturalParams {
    NaturalParams::new(p.theta1, p.theta2, p.theta3)
}

fn params(p: NaturalParams) -> PstarParams {
    PstarParams {
        theta1: p.theta1,
        theta2: p.theta2,
        theta3: p.theta3,
    }
}

fn moments(m: MomentsVector) -> PstarMoments {
    PstarMoments {
        mu1: m.mu1,
        mu2: m.mu2,
        mu3: m.mu3,
    }
}

fn ascent(c: &PstarAscentConfig) -> GradientAscentConfig {
    let mut cfg = GradientAscentConfig::new(c.step, c.max_iter).with_init(natural(&c.init));
    if c.grad_tol > 0.0 {
        cfg.grad_tol = Some(c.grad_tol);
    }
    // Only the final iterate is reported across the boundary.
    cfg.trace_every = c.max_iter.max(1);
    cfg
}

fn estimate(r: estimators::EstimateResult) -> PstarEstimate {
    PstarEstimate {
        theta: params(r.theta_star),
        iterations: r.iterations,
        converged: r.converged,
        total_time_ms: r.total_time_ms,
    }
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn pstar_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Empty graph on `n` vertices.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn pstar_graph_new(n: usize, out: *mut *mut PstarGraph) -> PstarStatus {
    guard(|| {
        let out = deref_mut(out, "out")?;
        let g = Graph::try_empty(n)?;
        *out = Box::into_raw(Box::new(PstarGraph(g)));
        Ok(())
    })
}

/// Graph from a row-major `n × n` 0/1 matrix, validated for symmetry and a
/// zero diagonal.
///
/// # Safety
/// `matrix` must point to `n * n` readable bytes; `out` as in
/// [`pstar_graph_new`].
#[no_mangle]
pub unsafe extern "C" fn pstar_graph_from_adjacency(
    matrix: *const u8,
    n: usize,
    out: *mut *mut PstarGraph,
) -> PstarStatus {
    guard(|| {
        let out = deref_mut(out, "out")?;
        if matrix.is_null() && n > 0 {
            return Err(Failure::Null("matrix"));
        }
        let cells = n.checked_mul(n).ok_or(Error::BadDimension(n))?;
        let flat: &[u8] = if cells == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(matrix, cells)
        };
        let mut rows = Vec::with_capacity(n);
        for r in flat.chunks(n.max(1)) {
            let row = r
                .iter()
                .map(|&b| match b {
                    0 => Ok(false),
                    1 => Ok(true),
                    v => Err(Error::InvalidConfig(format!(
                        "matrix entry {v} is not 0 or 1"
                    ))),
                })
                .collect::<Result<Vec<bool>, Error>>()?;
            rows.push(row);
        }
        let g = Graph::from_matrix(&rows)?;
        *out = Box::into_raw(Box::new(PstarGraph(g)));
        Ok(())
    })
}

/// Parses adjacency-matrix text (the `.adj` file format).
///
/// # Safety
/// `text` must be a NUL-terminated UTF-8 string; `out` as in
/// [`pstar_graph_new`].
#[no_mangle]
pub unsafe extern "C" fn pstar_graph_parse_adjacency(
    text: *const c_char,
    out: *mut *mut PstarGraph,
) -> PstarStatus {
    guard(|| {
        let out = deref_mut(out, "out")?;
        if text.is_null() {
            return Err(Failure::Null("text"));
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| Error::InvalidConfig("text is not UTF-8".into()))?;
        *out = Box::into_raw(Box::new(PstarGraph(io::parse_adjacency(s)?)));
        Ok(())
    })
}

/// Copy of the bundled 16-vertex Florentine business network.
///
/// # Safety
/// `out` as in [`pstar_graph_new`].
#[no_mangle]
pub unsafe extern "C" fn pstar_graph_florentine(out: *mut *mut PstarGraph) -> PstarStatus {
    guard(|| {
        let out = deref_mut(out, "out")?;
        *out = Box::into_raw(Box::new(PstarGraph(io::florentine())));
        Ok(())
    })
}

/// # Safety
/// `g` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pstar_graph_free(g: *mut PstarGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pstar_graph_num_vertices(
    g: *const PstarGraph,
    out: *mut usize,
) -> PstarStatus {
    guard(|| {
        let out = deref_mut(out, "out")?;
        *out = deref(g, "graph")?.0.n();
        Ok(())
    })
}

/// # Safety
/// `g` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pstar_graph_stats(
    g: *const PstarGraph,
    out: *mut PstarStats,
) -> PstarStatus {
    guard(|| {
        let s = deref(g, "graph")?.0.suff_stats();
        let out = deref_mut(out, "out")?;
        *out = PstarStats {
            edges: s.edges,
            two_stars: s.two_stars,
            triangles: s.triangles,
        };
        Ok(())
    })
}

/// Statistic differences between the graph with pair `(i, j)` present and
/// absent.
///
/// # Safety
/// `g` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pstar_graph_change_stats(
    g: *const PstarGraph,
    i: usize,
    j: usize,
    out: *mut PstarStats,
) -> PstarStatus {
    guard(|| {
        let d = deref(g, "graph")?.0.change_stats(i, j)?;
        let out = deref_mut(out, "out")?;
        *out = PstarStats {
            edges: d.d_edges,
            two_stars: d.d_two_stars,
            triangles: d.d_triangles,
        };
        Ok(())
    })
}

/// Flips pair `(i, j)` in place. `added` (may be null) receives whether the
/// edge is now present.
///
/// # Safety
/// `g` must be a live handle; `added` null or writable.
#[no_mangle]
pub unsafe extern "C" fn pstar_graph_toggle(
    g: *mut PstarGraph,
    i: usize,
    j: usize,
    added: *mut bool,
) -> PstarStatus {
    guard(|| {
        let now = deref_mut(g, "graph")?.0.toggle(i, j)?;
        if let Some(a) = added.as_mut() {
            *a = now;
        }
        Ok(())
    })
}

/// # Safety
/// `g` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pstar_graph_has_edge(
    g: *const PstarGraph,
    i: usize,
    j: usize,
    out: *mut bool,
) -> PstarStatus {
    guard(|| {
        let out = deref_mut(out, "out")?;
        *out = deref(g, "graph")?.0.has_edge(i, j)?;
        Ok(())
    })
}

/// # Safety
/// `g` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pstar_graph_degree(
    g: *const PstarGraph,
    i: usize,
    out: *mut usize,
) -> PstarStatus {
    guard(|| {
        let out = deref_mut(out, "out")?;
        *out = deref(g, "graph")?.0.degree(i)?;
        Ok(())
    })
}

/// High/low-temperature diagnostic. Up to `capacity` fixed points are
/// written to `points` (may be null when `capacity` is 0); `count` receives
/// the total number found.
///
/// # Safety
/// `p`, `phase` and `count` must be valid; `points` must have room for
/// `capacity` doubles.
#[no_mangle]
pub unsafe extern "C" fn pstar_phase(
    p: *const PstarParams,
    n: usize,
    phase: *mut PstarPhase,
    points: *mut f64,
    capacity: usize,
    count: *mut usize,
) -> PstarStatus {
    guard(|| {
        let d = mean_field::phase_of(&natural(deref(p, "params")?), n)?;
        *deref_mut(phase, "phase")? = match d.phase {
            Phase::High => PstarPhase::High,
            Phase::Low => PstarPhase::Low,
            Phase::Boundary => PstarPhase::Boundary,
        };
        *deref_mut(count, "count")? = d.fixed_points.len();
        if capacity > 0 {
            if points.is_null() {
                return Err(Failure::Null("points"));
            }
            let k = capacity.min(d.fixed_points.len());
            ptr::copy_nonoverlapping(d.fixed_points.as_ptr(), points, k);
        }
        Ok(())
    })
}

/// Mean-field approximation of the expected statistics.
///
/// # Safety
/// `p` readable, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pstar_mf_moments(
    p: *const PstarParams,
    n: usize,
    out: *mut PstarMoments,
) -> PstarStatus {
    guard(|| {
        let m = mean_field::mf_moments(&natural(deref(p, "params")?), n, &NewtonConfig::default())?;
        let out = deref_mut(out, "out")?;
        *out = moments(m);
        Ok(())
    })
}

/// Exact expected statistics by enumeration (`n <= 7`).
///
/// # Safety
/// `p` readable, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pstar_exact_moments(
    p: *const PstarParams,
    n: usize,
    out: *mut PstarMoments,
) -> PstarStatus {
    guard(|| {
        let m = exact::exact_moments(&natural(deref(p, "params")?), n)?;
        let out = deref_mut(out, "out")?;
        *out = moments(m);
        Ok(())
    })
}

/// Exact log-partition function by enumeration (`n <= 7`).
///
/// # Safety
/// `p` readable, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pstar_exact_log_partition(
    p: *const PstarParams,
    n: usize,
    out: *mut f64,
) -> PstarStatus {
    guard(|| {
        let out = deref_mut(out, "out")?;
        *out = exact::log_partition(&natural(deref(p, "params")?), n)?.log_partition;
        Ok(())
    })
}

/// Default sampler settings for `n` vertices.
#[no_mangle]
pub extern "C" fn pstar_sampler_config_default(
    n: usize,
    num_samples: usize,
    seed: u64,
) -> PstarSamplerConfig {
    let c = SamplerConfig::new(n, num_samples, seed);
    PstarSamplerConfig {
        n,
        num_samples,
        burn_in: c.burn_in,
        thinning: c.thinning,
        seed,
        initial_density: 0.5,
    }
}

/// Runs `chains` seeded Metropolis-Hastings chains, each keeping
/// `num_samples` graphs.
///
/// # Safety
/// `p` and `cfg` readable; `out` as in [`pstar_graph_new`].
#[no_mangle]
pub unsafe extern "C" fn pstar_sample(
    p: *const PstarParams,
    cfg: *const PstarSamplerConfig,
    chains: usize,
    out: *mut *mut PstarSampleSet,
) -> PstarStatus {
    guard(|| {
        let c = deref(cfg, "config")?;
        let mut sc = SamplerConfig::new(c.n, c.num_samples, c.seed);
        sc.burn_in = c.burn_in;
        sc.thinning = c.thinning;
        sc.initial = if c.initial_density == 0.0 {
            sampler::InitialState::Empty
        } else {
            sampler::InitialState::Random(c.initial_density)
        };
        let set = sampler::run_chains(&natural(deref(p, "params")?), &sc, chains)?;
        let out = deref_mut(out, "out")?;
        *out = Box::into_raw(Box::new(PstarSampleSet(set)));
        Ok(())
    })
}

/// Dataset from copies of `count` graphs of equal size.
///
/// # Safety
/// `graphs` must point to `count` live graph handles; `out` as in
/// [`pstar_graph_new`].
#[no_mangle]
pub unsafe extern "C" fn pstar_sample_set_from_graphs(
    graphs: *const *const PstarGraph,
    count: usize,
    out: *mut *mut PstarSampleSet,
) -> PstarStatus {
    guard(|| {
        let out = deref_mut(out, "out")?;
        if graphs.is_null() && count > 0 {
            return Err(Failure::Null("graphs"));
        }
        let handles: &[*const PstarGraph] = if count == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(graphs, count)
        };
        let gs = handles
            .iter()
            .map(|&h| deref(h, "graph").map(|g| g.0.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        *out = Box::into_raw(Box::new(PstarSampleSet(SampleSet::from_graphs(gs)?)));
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a live sample-set handle.
#[no_mangle]
pub unsafe extern "C" fn pstar_sample_set_free(s: *mut PstarSampleSet) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `s` live, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pstar_sample_set_len(
    s: *const PstarSampleSet,
    out: *mut usize,
) -> PstarStatus {
    guard(|| {
        let out = deref_mut(out, "out")?;
        *out = deref(s, "sample set")?.0.len();
        Ok(())
    })
}

/// Statistics of sample `index`.
///
/// # Safety
/// `s` live, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pstar_sample_set_stats(
    s: *const PstarSampleSet,
    index: usize,
    out: *mut PstarStats,
) -> PstarStatus {
    guard(|| {
        let set = &deref(s, "sample set")?.0;
        let st = set
            .stats
            .get(index)
            .ok_or_else(|| Error::InvalidConfig(format!("sample index {index} out of range")))?;
        let out = deref_mut(out, "out")?;
        *out = PstarStats {
            edges: st.edges,
            two_stars: st.two_stars,
            triangles: st.triangles,
        };
        Ok(())
    })
}

/// Per-sample mean of the statistics.
///
/// # Safety
/// `s` live, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pstar_sample_set_moments(
    s: *const PstarSampleSet,
    out: *mut PstarMoments,
) -> PstarStatus {
    guard(|| {
        let m = estimators::empirical_moments(&deref(s, "sample set")?.0)?;
        let out = deref_mut(out, "out")?;
        *out = moments(m);
        Ok(())
    })
}

/// Mean-field maximum-likelihood estimate from empirical moments.
///
/// # Safety
/// `m` and `cfg` readable, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pstar_estimate_mf(
    m: *const PstarMoments,
    n: usize,
    cfg: *const PstarAscentConfig,
    out: *mut PstarEstimate,
) -> PstarStatus {
    guard(|| {
        let m = deref(m, "moments")?;
        let r = estimators::mf_mlle(
            &MomentsVector::new(m.mu1, m.mu2, m.mu3),
            n,
            &ascent(deref(cfg, "config")?),
            &NewtonConfig::default(),
        )?;
        let out = deref_mut(out, "out")?;
        *out = estimate(r);
        Ok(())
    })
}

/// Maximum pseudo-likelihood estimate from a dataset.
///
/// # Safety
/// `s` live, `cfg` readable, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pstar_estimate_mple(
    s: *const PstarSampleSet,
    cfg: *const PstarAscentConfig,
    out: *mut PstarEstimate,
) -> PstarStatus {
    guard(|| {
        let r = estimators::mple(&deref(s, "sample set")?.0, &ascent(deref(cfg, "config")?))?;
        let out = deref_mut(out, "out")?;
        *out = estimate(r);
        Ok(())
    })
}

/// Exact maximum-likelihood estimate by enumeration (`n <= 7`).
///
/// # Safety
/// `m` and `cfg` readable, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pstar_estimate_exact(
    m: *const PstarMoments,
    n: usize,
    cfg: *const PstarAscentConfig,
    out: *mut PstarEstimate,
) -> PstarStatus {
    guard(|| {
        let m = deref(m, "moments")?;
        let r = exact::mlle_exact(
            &MomentsVector::new(m.mu1, m.mu2, m.mu3),
            n,
            &ascent(deref(cfg, "config")?),
        )?;
        let out = deref_mut(out, "out")?;
        *out = estimate(r);
        Ok(())
    })
}
