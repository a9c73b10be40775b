//! Serializable report shapes emitted by the CLI.

use serde::Serialize;

use hitcalc::groups::InvariantReport;
use hitcalc::hit::{CohitBasis, WeightView};
use hitcalc::kameko::KernelReport;
use hitcalc::monomial::WeightVector;

#[derive(Serialize)]
pub struct Cohit {
    pub n: usize,
    pub d: u64,
    pub omega: Option<Vec<u32>>,
    pub part: &'static str,
    pub dim: usize,
    /// Admissible monomials as exponent tuples, descending.
    pub admissibles: Vec<Vec<u64>>,
}

impl Cohit {
    pub fn text(&self) -> String {
        let mut out = format!(
            "(QP_{})_{} part={} {}dim = {}",
            self.n,
            self.d,
            self.part,
            match &self.omega {
                Some(w) => format!("omega={w:?} "),
                None => String::new(),
            },
            self.dim
        );
        for a in &self.admissibles {
            out.push_str(&format!("\n  {a:?}"));
        }
        out
    }
}

pub fn cohit(basis: &CohitBasis, omega: Option<&WeightVector>) -> Cohit {
    Cohit {
        n: basis.n(),
        d: basis.d(),
        omega: omega.map(|w| w.entries().to_vec()),
        part: basis.part().as_str(),
        dim: basis.dim(),
        admissibles: basis
            .admissibles()
            .iter()
            .map(|m| m.exponents().to_vec())
            .collect(),
    }
}

pub fn cohit_view(view: &WeightView<'_>, n: usize, d: u64) -> Cohit {
    Cohit {
        n,
        d,
        omega: Some(view.omega().entries().to_vec()),
        part: "full",
        dim: view.dim(),
        admissibles: view
            .admissibles()
            .iter()
            .map(|m| m.exponents().to_vec())
            .collect(),
    }
}

#[derive(Serialize)]
pub struct WeightTable {
    pub n: usize,
    pub d: u64,
    pub part: &'static str,
    pub total_dim: usize,
    pub per_omega: Vec<(Vec<u32>, usize)>,
}

impl WeightTable {
    pub fn text(&self) -> String {
        let mut out = format!(
            "(QP_{})_{} part={} dim = {}",
            self.n, self.d, self.part, self.total_dim
        );
        for (w, k) in &self.per_omega {
            out.push_str(&format!("\n  omega {w:?} -> {k}"));
        }
        out
    }
}

pub fn weight_table(basis: &CohitBasis) -> WeightTable {
    WeightTable {
        n: basis.n(),
        d: basis.d(),
        part: basis.part().as_str(),
        total_dim: basis.dim(),
        per_omega: basis
            .weight_dims()
            .into_iter()
            .map(|(w, k)| (w.entries().to_vec(), k))
            .collect(),
    }
}

#[derive(Serialize)]
pub struct KamekoKernel {
    pub n: usize,
    pub source_degree: u64,
    pub total: usize,
    pub per_omega: Vec<(Vec<u32>, usize)>,
}

impl KamekoKernel {
    pub fn text(&self) -> String {
        let mut out = format!(
            "Ker(Sq^0_*) at (n={}, d={}): total = {}",
            self.n, self.source_degree, self.total
        );
        for (w, k) in &self.per_omega {
            out.push_str(&format!("\n  omega {w:?} -> {k}"));
        }
        out
    }
}

pub fn kameko_kernel(report: &KernelReport) -> KamekoKernel {
    KamekoKernel {
        n: report.n,
        source_degree: report.source_degree,
        total: report.total,
        per_omega: report
            .per_omega
            .iter()
            .map(|(w, k)| (w.entries().to_vec(), *k))
            .collect(),
    }
}

#[derive(Serialize)]
pub struct Invariants {
    pub group: &'static str,
    pub n: usize,
    pub d: u64,
    pub omega: Option<Vec<u32>>,
    pub dim: usize,
    /// Generators as polynomial strings over admissible monomials.
    pub generators: Vec<String>,
}

impl Invariants {
    pub fn text(&self) -> String {
        let mut out = format!(
            "{}-invariants at (n={}, d={}){}: dim = {}",
            self.group,
            self.n,
            self.d,
            match &self.omega {
                Some(w) => format!(" omega={w:?}"),
                None => String::new(),
            },
            self.dim
        );
        for g in &self.generators {
            out.push_str(&format!("\n  {g}"));
        }
        out
    }
}

pub fn invariants(
    report: &InvariantReport,
    n: usize,
    d: u64,
    omega: Option<&WeightVector>,
) -> Invariants {
    Invariants {
        group: report.group.as_str(),
        n,
        d,
        omega: omega.map(|w| w.entries().to_vec()),
        dim: report.dim,
        generators: report.generators.iter().map(|g| g.to_string()).collect(),
    }
}

#[derive(Serialize)]
pub struct Verify {
    pub n: usize,
    pub d: u64,
    pub group: &'static str,
    pub fixed: bool,
}

#[derive(Serialize)]
pub struct Annihilated {
    pub n: usize,
    pub degree: Option<u64>,
    pub annihilated: bool,
}

#[derive(Serialize)]
pub struct Pairing {
    pub n: usize,
    pub value: u8,
}
