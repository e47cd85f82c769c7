//! Declarations of ground sets, measurements, sequences, paths and
//! assignments, parsed into a name-keyed [`Workspace`].

mod lexer;
mod parser;
mod print;

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path as FsPath;
use std::sync::Arc;

use compalg_core::algebra::AlgebraKind;
use compalg_core::model::{GroundSet, Measurement, MeasurementSequence, Path};

use crate::assignment_file::AssignmentData;

pub use parser::{parse, parse_with};

/// 1-based line; columns are 1-based, `col_end` exclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Span {
    pub line: usize,
    pub col_start: usize,
    pub col_end: usize,
}

impl Span {
    pub fn new(line: usize, col_start: usize, col_end: usize) -> Self {
        Span {
            line,
            col_start,
            col_end,
        }
    }

    /// Covers both spans when they share a line; otherwise `self`.
    pub fn to(self, other: Span) -> Span {
        if self.line == other.line {
            Span::new(
                self.line,
                self.col_start.min(other.col_start),
                self.col_end.max(other.col_end),
            )
        } else {
            self
        }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}-{}", self.line, self.col_start, self.col_end)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagnosticKind {
    Parse,
    Semantic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub message: String,
    pub span: Span,
}

impl Diagnostic {
    pub fn parse(message: impl Into<String>, span: Span) -> Self {
        Diagnostic {
            kind: DiagnosticKind::Parse,
            message: message.into(),
            span,
        }
    }

    pub fn semantic(message: impl Into<String>, span: Span) -> Self {
        Diagnostic {
            kind: DiagnosticKind::Semantic,
            message: message.into(),
            span,
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            DiagnosticKind::Parse => "parse error",
            DiagnosticKind::Semantic => "semantic error",
        };
        write!(f, "{}: {kind}: {}", self.span, self.message)
    }
}

impl std::error::Error for Diagnostic {}

#[derive(Clone, Debug, PartialEq)]
pub struct SequenceDecl {
    pub steps: Vec<String>,
    pub sequence: MeasurementSequence,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PathDecl {
    pub sequence: String,
    pub path: Path,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AssignmentDecl {
    pub sequence: String,
    pub algebra: AlgebraKind,
    pub file: String,
    pub data: AssignmentData,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Workspace {
    pub ground_sets: BTreeMap<String, Arc<GroundSet>>,
    pub measurements: BTreeMap<String, Measurement>,
    pub sequences: BTreeMap<String, SequenceDecl>,
    pub paths: BTreeMap<String, PathDecl>,
    pub assignments: BTreeMap<String, AssignmentDecl>,
}

impl Workspace {
    /// Canonical DSL text.
    pub fn to_dsl(&self) -> String {
        print::print(self)
    }

    /// Ground set named `name`, or the ground set of measurement `name`.
    pub fn resolve_ground(&self, name: &str) -> Option<Arc<GroundSet>> {
        self.measurements
            .get(name)
            .map(|m| m.ground().clone())
            .or_else(|| self.ground_sets.get(name).cloned())
    }
}

/// Reads `file` and resolves assignment file names against its directory.
pub fn parse_file(file: &FsPath) -> Result<Workspace, FileError> {
    let src = std::fs::read_to_string(file)
        .map_err(|e| FileError::Io(format!("{}: {e}", file.display())))?;
    let base = file.parent().map(FsPath::to_path_buf).unwrap_or_default();
    parse_with(&src, &mut |name| {
        std::fs::read_to_string(base.join(name)).map_err(|e| e.to_string())
    })
    .map_err(|d| FileError::Diagnostic(file.display().to_string(), d))
}

#[derive(Debug, thiserror::Error)]
pub enum FileError {
    #[error("{0}")]
    Io(String),
    #[error("{0}:{1}")]
    Diagnostic(String, Diagnostic),
}
