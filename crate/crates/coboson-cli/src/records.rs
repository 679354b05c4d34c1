//! Row types emitted by the commands, plus the state selector.

use coboson::{bosonic_reference, quadrature_variances, uncertainty_product, SqueezedState};
use serde::Serialize;

/// 17 significant digits; round-trip exact for f64.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Which eigenstate a sweep reports on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateSelector {
    Index(usize),
    Last,
    Vacuum,
}

impl StateSelector {
    pub fn parse(s: &str) -> Result<Self, String> {
        match s {
            "last" => Ok(Self::Last),
            "vacuum" => Ok(Self::Vacuum),
            other => other.parse::<usize>().map(Self::Index).map_err(|_| {
                format!("state selector must be an index, \"last\", or \"vacuum\"; got {other:?}")
            }),
        }
    }

    pub fn validate_for(&self, n_s: usize) -> Result<(), String> {
        if let Self::Index(k) = self {
            if *k > n_s {
                return Err(format!(
                    "state index {k} out of range: n_s = {n_s} has {} states",
                    n_s + 1
                ));
            }
        }
        Ok(())
    }

    /// Pick from a canonically ordered, nonempty spectrum. "vacuum" means the
    /// eigenvalue closest to zero, which is exact for even n_s.
    pub fn choose<'a>(&self, states: &'a [SqueezedState]) -> &'a SqueezedState {
        match self {
            Self::Index(k) => &states[*k],
            Self::Last => states.last().expect("spectrum never empty"),
            Self::Vacuum => states
                .iter()
                .min_by(|a, b| a.alpha().norm().total_cmp(&b.alpha().norm()))
                .expect("spectrum never empty"),
        }
    }
}

/// Table row shared by every table-emitting command.
pub trait Table {
    const COLUMNS: &'static [&'static str];
    fn csv_row(&self) -> String;
}

/// One (n_s, r) grid point of a sweep: the selected state's observables next
/// to the elementary bosonic references.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRecord {
    pub n_s: usize,
    pub r: f64,
    pub phi: f64,
    pub state_index: usize,
    pub alpha_re: f64,
    pub alpha_im: f64,
    pub d: f64,
    pub var_chi: f64,
    pub var_pi: f64,
    pub product: f64,
    pub bound: f64,
    pub bosonic_var_chi: f64,
    pub bosonic_var_pi: f64,
}

impl SweepRecord {
    pub fn from_state(state: &SqueezedState) -> Self {
        let (var_chi, var_pi) = quadrature_variances(state);
        let (product, bound) = uncertainty_product(state);
        let r = state.params().r();
        let (bosonic_var_chi, bosonic_var_pi) = bosonic_reference(r);
        Self {
            n_s: state.pair_states(),
            r,
            phi: state.params().phi(),
            state_index: state.index(),
            alpha_re: state.alpha().re,
            alpha_im: state.alpha().im,
            d: state.d_value(),
            var_chi,
            var_pi,
            product,
            bound,
            bosonic_var_chi,
            bosonic_var_pi,
        }
    }

    /// Row invariants every emitted record must satisfy.
    pub fn validate(&self, tol: f64) -> Result<(), String> {
        let half_gap = (1.0 - self.d) / 2.0;
        if (self.bound - half_gap).abs() > tol {
            return Err(format!(
                "row (n_s={}, r={}): bound {} differs from (1-d)/2 = {half_gap}",
                self.n_s, self.r, self.bound
            ));
        }
        if self.product < self.bound - tol {
            return Err(format!(
                "row (n_s={}, r={}): product {} below bound {}",
                self.n_s, self.r, self.product, self.bound
            ));
        }
        Ok(())
    }
}

impl Table for SweepRecord {
    const COLUMNS: &'static [&'static str] = &[
        "n_s",
        "r",
        "phi",
        "state_index",
        "alpha_re",
        "alpha_im",
        "d",
        "var_chi",
        "var_pi",
        "product",
        "bound",
        "bosonic_var_chi",
        "bosonic_var_pi",
    ];

    fn csv_row(&self) -> String {
        [
            self.n_s.to_string(),
            fmt_f64(self.r),
            fmt_f64(self.phi),
            self.state_index.to_string(),
            fmt_f64(self.alpha_re),
            fmt_f64(self.alpha_im),
            fmt_f64(self.d),
            fmt_f64(self.var_chi),
            fmt_f64(self.var_pi),
            fmt_f64(self.product),
            fmt_f64(self.bound),
            fmt_f64(self.bosonic_var_chi),
            fmt_f64(self.bosonic_var_pi),
        ]
        .join(",")
    }
}

/// One eigenvalue of a spectrum listing.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumRow {
    pub n_s: usize,
    pub r: f64,
    pub phi: f64,
    pub index: usize,
    pub alpha_re: f64,
    pub alpha_im: f64,
}

impl Table for SpectrumRow {
    const COLUMNS: &'static [&'static str] =
        &["n_s", "r", "phi", "index", "alpha_re", "alpha_im"];

    fn csv_row(&self) -> String {
        [
            self.n_s.to_string(),
            fmt_f64(self.r),
            fmt_f64(self.phi),
            self.index.to_string(),
            fmt_f64(self.alpha_re),
            fmt_f64(self.alpha_im),
        ]
        .join(",")
    }
}

/// var_chi against the bosonic e^{-2r}/2 reference.
#[derive(Debug, Clone, Serialize)]
pub struct Fig1Row {
    pub n_s: usize,
    pub r: f64,
    pub state: &'static str,
    pub var_chi: f64,
    pub bosonic_var_chi: f64,
}

impl Table for Fig1Row {
    const COLUMNS: &'static [&'static str] = &["n_s", "r", "state", "var_chi", "bosonic_var_chi"];

    fn csv_row(&self) -> String {
        [
            self.n_s.to_string(),
            fmt_f64(self.r),
            self.state.to_string(),
            fmt_f64(self.var_chi),
            fmt_f64(self.bosonic_var_chi),
        ]
        .join(",")
    }
}

/// var_pi against the bosonic e^{+2r}/2 reference.
#[derive(Debug, Clone, Serialize)]
pub struct Fig2Row {
    pub n_s: usize,
    pub r: f64,
    pub state: &'static str,
    pub var_pi: f64,
    pub bosonic_var_pi: f64,
}

impl Table for Fig2Row {
    const COLUMNS: &'static [&'static str] = &["n_s", "r", "state", "var_pi", "bosonic_var_pi"];

    fn csv_row(&self) -> String {
        [
            self.n_s.to_string(),
            fmt_f64(self.r),
            self.state.to_string(),
            fmt_f64(self.var_pi),
            fmt_f64(self.bosonic_var_pi),
        ]
        .join(",")
    }
}

/// Uncertainty product between its two limits: the bosonic 1/2 and the
/// state-dependent bound (1-d)/2.
#[derive(Debug, Clone, Serialize)]
pub struct Fig3Row {
    pub n_s: usize,
    pub r: f64,
    pub state: &'static str,
    pub product: f64,
    pub bound: f64,
    pub half: f64,
}

impl Table for Fig3Row {
    const COLUMNS: &'static [&'static str] = &["n_s", "r", "state", "product", "bound", "half"];

    fn csv_row(&self) -> String {
        [
            self.n_s.to_string(),
            fmt_f64(self.r),
            self.state.to_string(),
            fmt_f64(self.product),
            fmt_f64(self.bound),
            fmt_f64(self.half),
        ]
        .join(",")
    }
}
