//! JSON problem, matrix and generator files.
//!
//! A problem file is an object with keys `field`, `problem`, `params` and
//! `matrices`; every matrix is an array of rows of entry strings such as
//! `"3"`, `"-1/2"`. Output matrices use the same layout with rationals in
//! lowest terms and a positive denominator.
//!
//! ```json
//! {
//!   "field": "Q",
//!   "problem": "cline",
//!   "params": {"m": 1, "n": 1},
//!   "matrices": {"A": [["1","0"],["0","1"]], "B": [["1"]], "C": [["1"],["2"]]}
//! }
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cline::ClineProblem;
use crate::generator::AffineGenerator;
use crate::kcomm::KCommProblem;
use crate::matrix::Matrix;
use crate::oracle::{LinearMatrixSystem, LinearTerm, Sign};
use crate::penrose::PenroseProblem;
use crate::scalar::{FieldError, FieldSpec};

/// Rows of entry strings.
pub type MatrixBlock = Vec<Vec<String>>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProblemError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("parse error in matrix {matrix} at row {row}, column {column}: {source}")]
    Entry {
        matrix: String,
        row: usize,
        column: usize,
        source: FieldError,
    },
    #[error("parse error in field tag: {0}")]
    Field(FieldError),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

impl ProblemError {
    fn json(e: serde_json::Error) -> ProblemError {
        ProblemError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }

    fn io(path: &str, e: std::io::Error) -> ProblemError {
        ProblemError::Io {
            path: path.to_string(),
            message: e.to_string(),
        }
    }
}

/// The problem families a file can describe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProblemKind {
    Cline,
    Penrose,
    KComm,
    OneInverse,
    Index,
    Oracle,
}

impl ProblemKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ProblemKind::Cline => "cline",
            ProblemKind::Penrose => "penrose",
            ProblemKind::KComm => "kcomm",
            ProblemKind::OneInverse => "oneinv",
            ProblemKind::Index => "index",
            ProblemKind::Oracle => "oracle",
        }
    }

    /// Matrix names the file must provide. Oracle files name their own.
    pub fn roster(self) -> &'static [&'static str] {
        match self {
            ProblemKind::Cline => &["A", "B", "C"],
            ProblemKind::Penrose => &["A", "B", "D", "E"],
            ProblemKind::KComm | ProblemKind::OneInverse | ProblemKind::Index => &["A"],
            ProblemKind::Oracle => &[],
        }
    }

    pub fn params(self) -> &'static [&'static str] {
        match self {
            ProblemKind::Cline | ProblemKind::Penrose => &["m", "n"],
            ProblemKind::KComm => &["k"],
            ProblemKind::OneInverse | ProblemKind::Index => &[],
            ProblemKind::Oracle => &["x_rows", "x_cols"],
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProblemKind {
    type Err = ProblemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "cline" => ProblemKind::Cline,
            "penrose" => ProblemKind::Penrose,
            "kcomm" => ProblemKind::KComm,
            "oneinv" => ProblemKind::OneInverse,
            "index" => ProblemKind::Index,
            "oracle" => ProblemKind::Oracle,
            other => {
                return Err(ProblemError::Validation(format!(
                    "unknown problem \"{other}\", expected cline, penrose, kcomm, oneinv, index or oracle"
                )))
            }
        })
    }
}

/// `sign · left · X · right`, with matrices referenced by name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub sign: String,
    pub left: String,
    pub right: String,
}

/// `Σ terms = rhs` for `oracle` problems.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintSpec {
    pub terms: Vec<TermSpec>,
    pub rhs: String,
}

/// A problem file as written on disk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub field: String,
    pub problem: String,
    #[serde(default)]
    pub params: BTreeMap<String, u32>,
    pub matrices: BTreeMap<String, MatrixBlock>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constraints: Vec<ConstraintSpec>,
}

/// A validated problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Problem {
    Cline(ClineProblem),
    Penrose(PenroseProblem),
    KComm(KCommProblem),
    OneInverse(Matrix),
    Index(Matrix),
    Oracle(LinearMatrixSystem),
}

impl Problem {
    pub fn kind(&self) -> ProblemKind {
        match self {
            Problem::Cline(_) => ProblemKind::Cline,
            Problem::Penrose(_) => ProblemKind::Penrose,
            Problem::KComm(_) => ProblemKind::KComm,
            Problem::OneInverse(_) => ProblemKind::OneInverse,
            Problem::Index(_) => ProblemKind::Index,
            Problem::Oracle(_) => ProblemKind::Oracle,
        }
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Problem::Cline(p) => p.field(),
            Problem::Penrose(p) => p.field(),
            Problem::KComm(p) => p.field(),
            Problem::OneInverse(a) | Problem::Index(a) => a.field(),
            Problem::Oracle(s) => s.field(),
        }
    }

    /// The linear matrix system whose solutions the problem asks for.
    /// `oneinv` and `index` files yield `A·X·A = A`.
    pub fn system(&self) -> LinearMatrixSystem {
        match self {
            Problem::Cline(p) => p.system(),
            Problem::Penrose(p) => p.system(),
            Problem::KComm(p) => p.system(),
            Problem::OneInverse(a) | Problem::Index(a) => crate::gen_inverse::one_inverse_system(a),
            Problem::Oracle(s) => s.clone(),
        }
    }
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<ProblemFile, ProblemError> {
        serde_json::from_str(text).map_err(ProblemError::json)
    }

    pub fn read(path: &str) -> Result<ProblemFile, ProblemError> {
        let text = std::fs::read_to_string(path).map_err(|e| ProblemError::io(path, e))?;
        ProblemFile::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        to_pretty_json(&serde_json::to_value(self).expect("problem files serialize"))
    }

    pub fn kind(&self) -> Result<ProblemKind, ProblemError> {
        self.problem.parse()
    }

    /// Field tag of the file, or `field_override` when given.
    pub fn field_spec(&self, field_override: Option<FieldSpec>) -> Result<FieldSpec, ProblemError> {
        match field_override {
            Some(f) => Ok(f),
            None => self.field.parse().map_err(ProblemError::Field),
        }
    }

    /// Parses one named matrix.
    pub fn matrix(&self, name: &str, field: FieldSpec) -> Result<Matrix, ProblemError> {
        let block = self
            .matrices
            .get(name)
            .ok_or_else(|| ProblemError::Validation(format!("missing matrix {name}")))?;
        parse_block(name, block, field)
    }

    fn param(&self, name: &str) -> Result<u32, ProblemError> {
        self.params
            .get(name)
            .copied()
            .ok_or_else(|| ProblemError::Validation(format!("missing parameter {name}")))
    }

    /// Checks the roster and shapes and builds the typed problem.
    pub fn validate(&self, field_override: Option<FieldSpec>) -> Result<Problem, ProblemError> {
        let kind = self.kind()?;
        let field = self.field_spec(field_override)?;
        if kind != ProblemKind::Oracle {
            if let Some(missing) = kind.roster().iter().find(|n| !self.matrices.contains_key(**n)) {
                return Err(ProblemError::Validation(format!("missing matrix {missing} for {kind}")));
            }
            if let Some(extra) = self.matrices.keys().find(|n| !kind.roster().contains(&n.as_str())) {
                return Err(ProblemError::Validation(format!("unexpected matrix {extra} for {kind}")));
            }
            if !self.constraints.is_empty() {
                return Err(ProblemError::Validation(format!("constraints are only allowed for oracle, not {kind}")));
            }
        }
        for name in kind.params() {
            self.param(name)?;
        }
        let m = |name: &str| self.matrix(name, field);
        let invalid = |e: crate::report::EquationError| ProblemError::Validation(e.to_string());
        Ok(match kind {
            ProblemKind::Cline => Problem::Cline(
                ClineProblem::new(m("A")?, m("B")?, m("C")?, self.param("m")?, self.param("n")?).map_err(invalid)?,
            ),
            ProblemKind::Penrose => Problem::Penrose(
                PenroseProblem::new(m("A")?, m("B")?, m("D")?, m("E")?, self.param("m")?, self.param("n")?)
                    .map_err(invalid)?,
            ),
            ProblemKind::KComm => Problem::KComm(KCommProblem::new(m("A")?, self.param("k")?).map_err(invalid)?),
            ProblemKind::OneInverse => Problem::OneInverse(m("A")?),
            ProblemKind::Index => {
                let a = m("A")?;
                if !a.is_square() {
                    return Err(ProblemError::Validation(format!(
                        "A must be square for index, got {}x{}",
                        a.rows(),
                        a.cols()
                    )));
                }
                Problem::Index(a)
            }
            ProblemKind::Oracle => Problem::Oracle(self.oracle_system(field)?),
        })
    }

    fn oracle_system(&self, field: FieldSpec) -> Result<LinearMatrixSystem, ProblemError> {
        if self.constraints.is_empty() {
            return Err(ProblemError::Validation("oracle problems need at least one constraint".into()));
        }
        let mut system = LinearMatrixSystem::new(field, self.param("x_rows")? as usize, self.param("x_cols")? as usize);
        for (ci, c) in self.constraints.iter().enumerate() {
            let mut terms = Vec::with_capacity(c.terms.len());
            for t in &c.terms {
                terms.push(LinearTerm::new(self.matrix(&t.left, field)?, self.matrix(&t.right, field)?, parse_sign(&t.sign)?));
            }
            system = system
                .with_constraint(terms, self.matrix(&c.rhs, field)?)
                .map_err(|e| ProblemError::Validation(format!("constraint {ci}: {e}")))?;
        }
        Ok(system)
    }
}

/// Reads a problem file from text and validates it.
pub fn parse_problem(text: &str, field_override: Option<FieldSpec>) -> Result<Problem, ProblemError> {
    ProblemFile::from_json(text)?.validate(field_override)
}

fn parse_sign(s: &str) -> Result<Sign, ProblemError> {
    match s {
        "+" => Ok(Sign::Plus),
        "-" => Ok(Sign::Minus),
        other => Err(ProblemError::Validation(format!("sign must be \"+\" or \"-\", got \"{other}\""))),
    }
}

/// Parses a block of entry strings; errors carry the matrix name and the
/// zero-based row and column of the offending entry.
pub fn parse_block(name: &str, block: &MatrixBlock, field: FieldSpec) -> Result<Matrix, ProblemError> {
    let mut rows = Vec::with_capacity(block.len());
    for (i, row) in block.iter().enumerate() {
        let mut parsed = Vec::with_capacity(row.len());
        for (j, s) in row.iter().enumerate() {
            parsed.push(field.parse_scalar(s).map_err(|source| ProblemError::Entry {
                matrix: name.to_string(),
                row: i,
                column: j,
                source,
            })?);
        }
        rows.push(parsed);
    }
    Matrix::from_rows(field, rows).map_err(|e| ProblemError::Validation(format!("matrix {name}: {e}")))
}

/// Entry strings of a matrix in canonical form.
pub fn to_block(m: &Matrix) -> MatrixBlock {
    m.row_vecs()
        .into_iter()
        .map(|row| row.iter().map(ToString::to_string).collect())
        .collect()
}

/// Arrays that fit on a line within this width and hold no objects are
/// printed inline, so small matrices read as `[["1", "0"], ["0", "1"]]`.
const INLINE_WIDTH: usize = 72;

/// Indented JSON with short arrays kept on one line. Object keys come out
/// sorted, which makes the output byte-for-byte reproducible.
pub fn to_pretty_json(value: &serde_json::Value) -> String {
    let mut out = String::new();
    write_json(&mut out, value, 0);
    out.push('\n');
    out
}

fn inline_json(value: &serde_json::Value) -> Option<String> {
    use serde_json::Value;
    match value {
        Value::Object(_) => None,
        Value::Array(items) => {
            let parts: Option<Vec<String>> = items.iter().map(inline_json).collect();
            Some(format!("[{}]", parts?.join(", ")))
        }
        scalar => Some(scalar.to_string()),
    }
}

fn write_json(out: &mut String, value: &serde_json::Value, depth: usize) {
    use serde_json::Value;
    let pad = |d: usize| "  ".repeat(d);
    match value {
        Value::Array(items) => match inline_json(value) {
            Some(line) if line.len() + 2 * depth <= INLINE_WIDTH || items.is_empty() => out.push_str(&line),
            _ => {
                out.push_str("[\n");
                for (i, item) in items.iter().enumerate() {
                    out.push_str(&pad(depth + 1));
                    write_json(out, item, depth + 1);
                    out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
                }
                out.push_str(&pad(depth));
                out.push(']');
            }
        },
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, v)) in map.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_json(out, v, depth + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

/// A file holding named matrices, used for `--with-x0` and `--one-inverse`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    pub matrices: BTreeMap<String, MatrixBlock>,
}

impl MatrixFile {
    pub fn from_json(text: &str) -> Result<MatrixFile, ProblemError> {
        serde_json::from_str(text).map_err(ProblemError::json)
    }

    pub fn read(path: &str) -> Result<MatrixFile, ProblemError> {
        let text = std::fs::read_to_string(path).map_err(|e| ProblemError::io(path, e))?;
        MatrixFile::from_json(&text)
    }

    pub fn single(name: &str, m: &Matrix) -> MatrixFile {
        MatrixFile {
            field: Some(m.field().to_string()),
            matrices: BTreeMap::from([(name.to_string(), to_block(m))]),
        }
    }

    fn check_field(&self, field: FieldSpec) -> Result<(), ProblemError> {
        match &self.field {
            Some(tag) => {
                let own: FieldSpec = tag.parse().map_err(ProblemError::Field)?;
                if own == field {
                    Ok(())
                } else {
                    Err(ProblemError::Validation(format!("matrix file is over {own}, problem is over {field}")))
                }
            }
            None => Ok(()),
        }
    }

    /// The named matrix, if present.
    pub fn get(&self, name: &str, field: FieldSpec) -> Result<Option<Matrix>, ProblemError> {
        self.check_field(field)?;
        self.matrices.get(name).map(|b| parse_block(name, b, field)).transpose()
    }

    /// The matrix called `name`, or the only matrix in the file.
    pub fn get_or_only(&self, name: &str, field: FieldSpec) -> Result<Matrix, ProblemError> {
        if let Some(m) = self.get(name, field)? {
            return Ok(m);
        }
        match self.matrices.iter().next() {
            Some((only, block)) if self.matrices.len() == 1 => parse_block(only, block, field),
            _ => Err(ProblemError::Validation(format!("missing matrix {name}"))),
        }
    }
}

/// One generator term with inline matrices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorTermSpec {
    pub sign: String,
    pub left: MatrixBlock,
    pub right: MatrixBlock,
}

/// An affine generator `C₀ + Σ sign·left·Y·right` as printed by `solve` and read by `check-repro`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorFile {
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub formula: Option<String>,
    pub y_rows: usize,
    pub y_cols: usize,
    pub constant: MatrixBlock,
    pub terms: Vec<GeneratorTermSpec>,
}

impl GeneratorFile {
    pub fn from_generator(h: &AffineGenerator) -> GeneratorFile {
        let (y_rows, y_cols) = h.param_shape();
        GeneratorFile {
            field: h.field().to_string(),
            formula: h.formula().map(str::to_string),
            y_rows,
            y_cols,
            constant: to_block(h.constant()),
            terms: h
                .terms()
                .iter()
                .map(|t| GeneratorTermSpec {
                    sign: t.sign.symbol().to_string(),
                    left: to_block(&t.left),
                    right: to_block(&t.right),
                })
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<GeneratorFile, ProblemError> {
        serde_json::from_str(text).map_err(ProblemError::json)
    }

    pub fn read(path: &str) -> Result<GeneratorFile, ProblemError> {
        let text = std::fs::read_to_string(path).map_err(|e| ProblemError::io(path, e))?;
        GeneratorFile::from_json(&text)
    }

    pub fn to_generator(&self, field_override: Option<FieldSpec>) -> Result<AffineGenerator, ProblemError> {
        let field = match field_override {
            Some(f) => f,
            None => self.field.parse().map_err(ProblemError::Field)?,
        };
        let constant = parse_block("constant", &self.constant, field)?;
        let mut terms = Vec::with_capacity(self.terms.len());
        for (i, t) in self.terms.iter().enumerate() {
            terms.push(LinearTerm::new(
                parse_block(&format!("terms[{i}].left"), &t.left, field)?,
                parse_block(&format!("terms[{i}].right"), &t.right, field)?,
                parse_sign(&t.sign)?,
            ));
        }
        let h = AffineGenerator::new(constant, terms, (self.y_rows, self.y_cols))
            .map_err(|e| ProblemError::Validation(e.to_string()))?;
        Ok(match &self.formula {
            Some(f) => h.with_formula(f.clone()),
            None => h,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CLINE: &str = r#"{
        "field": "Q",
        "problem": "cline",
        "params": {"m": 1, "n": 1},
        "matrices": {
            "A": [["1", "0"], ["0", "1"]],
            "B": [["1", "0"], ["0", "1"]],
            "C": [["1", "2"], ["3", "4"]]
        }
    }"#;

    #[test]
    fn parses_cline_file() {
        let p = parse_problem(CLINE, None).unwrap();
        assert_eq!(p.kind(), ProblemKind::Cline);
        match p {
            Problem::Cline(c) => assert_eq!(c.c, Matrix::from_i64(FieldSpec::Rationals, &[&[1, 2], &[3, 4]])),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn missing_matrix_is_named() {
        let mut f = ProblemFile::from_json(CLINE).unwrap();
        f.matrices.remove("C");
        match f.validate(None) {
            Err(ProblemError::Validation(msg)) => assert!(msg.contains("matrix C"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn zero_denominator_is_a_parse_error() {
        let text = CLINE.replace(r#"["3", "4"]"#, r#"["3", "1/0"]"#);
        match parse_problem(&text, None) {
            Err(ProblemError::Entry { matrix, row, column, .. }) => {
                assert_eq!((matrix.as_str(), row, column), ("C", 1, 1));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn json_errors_carry_position() {
        match ProblemFile::from_json("{\n  \"field\": \"Q\",\n  oops\n}") {
            Err(ProblemError::Parse { line, column, .. }) => assert_eq!((line, column), (3, 3)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn field_override_reduces_entries() {
        let p = parse_problem(CLINE, Some(FieldSpec::Prime(2))).unwrap();
        assert_eq!(p.field(), FieldSpec::Prime(2));
        let Problem::Cline(c) = p else { unreachable!() };
        assert_eq!(c.c, Matrix::from_i64(FieldSpec::Prime(2), &[&[1, 0], &[1, 0]]));
    }

    #[test]
    fn canonical_output_entries() {
        let q = FieldSpec::Rationals;
        let block = vec![vec!["2/4".to_string(), "3/-6".to_string(), "-0".to_string()]];
        let m = parse_block("X", &block, q).unwrap();
        assert_eq!(to_block(&m), vec![vec!["1/2", "-1/2", "0"]]);
    }

    #[test]
    fn pretty_json_keeps_small_arrays_inline() {
        let v = serde_json::json!({"b": [["1", "0"], ["0", "1"]], "a": {}, "c": []});
        assert_eq!(to_pretty_json(&v), "{\n  \"a\": {},\n  \"b\": [[\"1\", \"0\"], [\"0\", \"1\"]],\n  \"c\": []\n}\n");
        let wide = serde_json::json!(vec![vec!["123456789"; 4]; 3]);
        let text = to_pretty_json(&wide);
        assert_eq!(text.lines().count(), 5);
        assert_eq!(serde_json::from_str::<serde_json::Value>(&text).unwrap(), wide);
    }

    #[test]
    fn problem_file_round_trips() {
        let f = ProblemFile::from_json(CLINE).unwrap();
        assert_eq!(ProblemFile::from_json(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn dimension_mismatch_is_a_validation_error() {
        let text = CLINE.replace(r#""C": [["1", "2"], ["3", "4"]]"#, r#""C": [["1", "2", "5"], ["3", "4", "6"]]"#);
        assert!(matches!(parse_problem(&text, None), Err(ProblemError::Validation(_))));
    }
}
