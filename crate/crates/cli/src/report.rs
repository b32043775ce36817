//! The structured report: serde schema (stable field order, rationals
//! as strings, 1-based indices) and the builders that fill it from the
//! core library.

use gkz_core::border::{border_image, BorderError, BorderImageReport};
use gkz_core::cone::{ConeError, Face, GkzMatrix};
use gkz_core::ekpresent::{ek_complex, export_script, EkError, ExportPayload};
use gkz_core::polyring::TermOrder;
use gkz_core::resonance::{
    cokernel_levels, contiguity_shift_qiso, is_resonant, minimal_shift_full,
    minimal_shift_partial, sres, ResonanceError,
};
use gkz_core::stdpairs::{qdeg_quotient, QdegPiece};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::parse::InputError;

pub const SCHEMA_VERSION: &str = "1";

/// Canonical echo of the run's inputs; also the `--input FILE` format.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InputEcho {
    pub matrix: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<String>>,
    /// 1-based column subsets.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<Vec<Vec<usize>>>,
    /// 1-based column subset.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub face: Option<Vec<usize>>,
    pub order: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dialect: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub payload: Option<String>,
    /// 1-based column index.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: String,
    pub input: InputEcho,
    pub sections: Sections,
}

#[derive(Debug, Default, Serialize)]
pub struct Sections {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub validate: Option<ValidateSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub faces: Option<Vec<FaceEntry>>,
    #[serde(rename = "toric-ideal", skip_serializing_if = "Option::is_none")]
    pub toric_ideal: Option<ToricSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub qdeg: Option<Vec<QdegEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sres: Option<SresSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub res: Option<ResSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub contiguity: Option<Vec<ContiguityEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shift: Option<ShiftSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub border: Option<Vec<BorderEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub export: Option<ExportSection>,
}

#[derive(Debug, Serialize)]
pub struct ValidateSection {
    pub ok: bool,
    pub rows: usize,
    pub columns: usize,
    /// `h` with `h . a_j >= 1` for every column: the pointedness and
    /// positive-grading witness.
    pub positive_functional: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct FaceEntry {
    /// 1-based columns on the face.
    pub columns: Vec<usize>,
    pub dim: usize,
    pub normal: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct ToricSection {
    pub order: String,
    pub generators: Vec<String>,
}

#[derive(Debug, Serialize, PartialEq, Eq)]
pub struct PieceEntry {
    pub shift: Vec<String>,
    /// 1-based columns spanning the piece direction.
    pub span_columns: Vec<usize>,
}

#[derive(Debug, Serialize)]
pub struct QdegEntry {
    /// 1-based quotient columns.
    pub tau: Vec<usize>,
    pub pieces: Vec<PieceEntry>,
}

#[derive(Debug, Serialize)]
pub struct SresWitnessEntry {
    pub k: String,
    pub piece: PieceEntry,
}

#[derive(Debug, Serialize)]
pub struct SresColumn {
    /// 1-based column index.
    pub j: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<SresWitnessEntry>,
}

#[derive(Debug, Serialize)]
pub struct SresSection {
    pub beta: Vec<String>,
    pub columns: Vec<SresColumn>,
    pub strongly_resonant: bool,
    pub verdict: String,
}

#[derive(Debug, Serialize)]
pub struct ResSection {
    pub resonant: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub face: Option<FaceEntry>,
}

#[derive(Debug, Serialize)]
pub struct ContiguityEntry {
    /// 1-based column index.
    pub j: usize,
    pub quasi_isomorphism: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cokernel_levels: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub infinite_family: Option<PieceEntry>,
}

#[derive(Debug, Serialize)]
pub struct PartialShiftEntry {
    /// 1-based quotient columns.
    pub tau: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shift: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub infinite_family: Option<PieceEntry>,
}

#[derive(Debug, Serialize)]
pub struct ShiftSection {
    pub full: u64,
    pub partial: Vec<PartialShiftEntry>,
}

#[derive(Debug, Serialize)]
pub struct BorderEntry {
    /// 1-based columns as given.
    pub face: Vec<usize>,
    /// 1-based columns of the smallest containing face.
    pub closure_face: Vec<usize>,
    pub dim: usize,
    pub basis: Vec<Vec<String>>,
    pub divisors: Vec<String>,
    pub index: String,
    pub complement_basis: Vec<Vec<String>>,
    pub beta_prime: Vec<String>,
    pub beta_second: Vec<String>,
    pub nonzero: bool,
    pub alpha: Vec<Vec<String>>,
    pub multiplicities: Vec<(usize, String)>,
    /// 1-based variables outside the closure face.
    pub polynomial_vars: Vec<usize>,
}

#[derive(Debug, Serialize)]
pub struct ExportSection {
    pub dialect: String,
    pub payload: String,
    pub script: String,
}

#[derive(Debug, Serialize)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
}

#[derive(Debug, Serialize)]
pub struct ErrorReport {
    pub schema_version: String,
    pub error: ErrorBody,
}

pub fn error_report(kind: &str, message: impl Into<String>) -> ErrorReport {
    ErrorReport {
        schema_version: SCHEMA_VERSION.to_string(),
        error: ErrorBody { kind: kind.to_string(), message: message.into() },
    }
}

fn one_based(cols: &[usize]) -> Vec<usize> {
    cols.iter().map(|&j| j + 1).collect()
}

fn tuple(parts: &[String]) -> String {
    format!("({})", parts.join(", "))
}

pub fn rationals(v: &[BigRational]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

pub fn from_cone_error(e: &ConeError) -> InputError {
    match e {
        ConeError::ZeroColumn { index } => {
            InputError::new("zero-column", format!("column {} is zero", index + 1))
        }
        ConeError::NotFullLattice { divisors } => InputError::new(
            "not-full-lattice",
            format!(
                "columns do not generate the full integer lattice (elementary divisors {})",
                tuple(&divisors.iter().map(|d| d.to_string()).collect::<Vec<_>>()),
            ),
        ),
        ConeError::NotPointed { line } => InputError::new(
            "not-pointed",
            format!(
                "cone is not pointed (contains the line through {})",
                tuple(&line.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
            ),
        ),
    }
}

pub fn from_ek_error(e: &EkError) -> InputError {
    match e {
        EkError::UnsupportedDialect { .. } => InputError::new("unsupported-dialect", e.to_string()),
        EkError::IndexOutOfRange { j, n } => InputError::new(
            "index-out-of-range",
            format!("column {} outside 1..={n}", j + 1),
        ),
    }
}

pub fn from_border_error(e: &BorderError) -> InputError {
    match e {
        BorderError::NotAFace { columns } => InputError::new(
            "not-a-face",
            format!(
                "columns {{{}}} do not span a face of the column cone",
                one_based(columns).iter().map(|j| j.to_string()).collect::<Vec<_>>().join(", "),
            ),
        ),
    }
}

pub fn echo_matrix(g: &GkzMatrix) -> Vec<Vec<String>> {
    (0..g.dim())
        .map(|i| (0..g.nvars()).map(|j| g.matrix().get(i, j).to_string()).collect())
        .collect()
}

fn piece_entry(p: &QdegPiece) -> PieceEntry {
    PieceEntry {
        shift: p.shift().iter().map(|x| x.to_string()).collect(),
        span_columns: one_based(p.span_columns()),
    }
}

fn face_entry(f: &Face) -> FaceEntry {
    FaceEntry {
        columns: one_based(f.columns()),
        dim: f.dim(),
        normal: f.normal().iter().map(|x| x.to_string()).collect(),
    }
}

pub fn validate_section(g: &GkzMatrix) -> ValidateSection {
    ValidateSection {
        ok: true,
        rows: g.dim(),
        columns: g.nvars(),
        positive_functional: g.positive_witness().iter().map(|x| x.to_string()).collect(),
    }
}

pub fn faces_section(g: &GkzMatrix) -> Vec<FaceEntry> {
    g.faces().iter().map(face_entry).collect()
}

pub fn toric_section(g: &GkzMatrix, order: &TermOrder, order_name: &str) -> ToricSection {
    ToricSection {
        order: order_name.to_string(),
        generators: g.toric_ideal(order).elements().iter().map(|b| b.to_string()).collect(),
    }
}

pub fn qdeg_section(g: &GkzMatrix, taus: &[Vec<usize>], order: &TermOrder) -> Vec<QdegEntry> {
    taus.iter()
        .map(|tau| QdegEntry {
            tau: one_based(tau),
            pieces: qdeg_quotient(g, tau, order).pieces().iter().map(piece_entry).collect(),
        })
        .collect()
}

pub fn sres_section(g: &GkzMatrix, beta: &[BigRational]) -> SresSection {
    let witnesses = sres(g, beta);
    let strongly_resonant = witnesses.iter().any(Option::is_some);
    let verdict_parts: Vec<String> = witnesses
        .iter()
        .flatten()
        .map(|w| format!("j = {} (k={})", w.j + 1, w.k))
        .collect();
    let verdict = if verdict_parts.is_empty() {
        "isomorphic".to_string()
    } else {
        format!("not isomorphic; witnesses {}", verdict_parts.join(", "))
    };
    SresSection {
        beta: rationals(beta),
        columns: witnesses
            .iter()
            .enumerate()
            .map(|(j, w)| SresColumn {
                j: j + 1,
                witness: w.as_ref().map(|w| SresWitnessEntry {
                    k: w.k.to_string(),
                    piece: piece_entry(&w.piece),
                }),
            })
            .collect(),
        strongly_resonant,
        verdict,
    }
}

pub fn res_section(g: &GkzMatrix, beta: &[BigRational]) -> ResSection {
    let face = is_resonant(g, beta);
    ResSection { resonant: face.is_some(), face: face.as_ref().map(face_entry) }
}

pub fn contiguity_entry(g: &GkzMatrix, beta: &[BigRational], j: usize) -> ContiguityEntry {
    let quasi_isomorphism =
        contiguity_shift_qiso(g, beta, j).expect("column index validated");
    match cokernel_levels(g, beta, j) {
        Ok(levels) => ContiguityEntry {
            j: j + 1,
            quasi_isomorphism,
            cokernel_levels: Some(levels.iter().map(|k| k.to_string()).collect()),
            infinite_family: None,
        },
        Err(ResonanceError::InfiniteFamily { piece }) => ContiguityEntry {
            j: j + 1,
            quasi_isomorphism,
            cokernel_levels: None,
            infinite_family: Some(piece_entry(&piece)),
        },
        Err(e) => unreachable!("validated index: {e}"),
    }
}

pub fn shift_section(g: &GkzMatrix, beta: &[BigRational], taus: &[Vec<usize>]) -> ShiftSection {
    let partial = taus
        .iter()
        .map(|tau| match minimal_shift_partial(g, beta, tau) {
            Ok(k) => PartialShiftEntry {
                tau: one_based(tau),
                shift: Some(k),
                infinite_family: None,
            },
            Err(ResonanceError::InfiniteFamily { piece }) => PartialShiftEntry {
                tau: one_based(tau),
                shift: None,
                infinite_family: Some(piece_entry(&piece)),
            },
            Err(e) => unreachable!("validated indices: {e}"),
        })
        .collect();
    ShiftSection { full: minimal_shift_full(g, beta), partial }
}

pub fn border_entry(report: &BorderImageReport) -> BorderEntry {
    BorderEntry {
        face: one_based(&report.given_columns),
        closure_face: one_based(&report.face_columns),
        dim: report.dim_f,
        basis: report
            .qprime_basis
            .iter()
            .map(|v| v.iter().map(|x| x.to_string()).collect())
            .collect(),
        divisors: report.k_diagonal.iter().map(|x| x.to_string()).collect(),
        index: report.index.to_string(),
        complement_basis: report
            .qsecond_basis
            .iter()
            .map(|v| v.iter().map(|x| x.to_string()).collect())
            .collect(),
        beta_prime: rationals(&report.beta_prime),
        beta_second: rationals(&report.beta_second),
        nonzero: report.nonzero,
        alpha: report.alpha_list.iter().map(|a| rationals(a)).collect(),
        multiplicities: report
            .multiplicities
            .iter()
            .map(|(q, c)| (*q, c.to_string()))
            .collect(),
        polynomial_vars: one_based(&report.polynomial_vars),
    }
}

pub fn border_all_faces(g: &GkzMatrix, beta: &[BigRational]) -> Vec<BorderEntry> {
    g.faces()
        .iter()
        .map(|f| {
            let report = border_image(g, f.columns(), beta)
                .expect("face columns always span their own face");
            border_entry(&report)
        })
        .collect()
}

pub fn export_section(
    g: &GkzMatrix,
    dialect: &str,
    payload_name: &str,
    payload: &ExportPayload<'_>,
) -> Result<ExportSection, InputError> {
    let script = export_script(g, dialect, payload).map_err(|e| from_ek_error(&e))?;
    Ok(ExportSection {
        dialect: dialect.to_string(),
        payload: payload_name.to_string(),
        script,
    })
}

/// The default export for the full report: the Euler-Koszul complex.
pub fn export_complex_section(
    g: &GkzMatrix,
    beta: &[BigRational],
    dialect: &str,
) -> Result<ExportSection, InputError> {
    let p = ek_complex(g, beta);
    export_section(g, dialect, "complex", &ExportPayload::Complex(&p))
}
