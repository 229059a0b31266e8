//! Source files, byte spans and line/column lookup.

use std::fmt;
use std::path::{Path, PathBuf};

/// Index of a file inside a [`SourceMap`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FileId(pub u32);

/// Half-open byte range `[start, end)` inside one source file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Span {
    pub file: FileId,
    pub start: u32,
    pub end: u32,
}

impl Span {
    pub fn new(file: FileId, start: usize, end: usize) -> Self {
        Span {
            file,
            start: start as u32,
            end: end as u32,
        }
    }

    /// Smallest span covering both `self` and `other`.
    pub fn to(self, other: Span) -> Span {
        Span {
            file: self.file,
            start: self.start.min(other.start),
            end: self.end.max(other.end),
        }
    }

    pub fn len(&self) -> usize {
        (self.end - self.start) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }
}

/// A `.mg` file handed to the frontend.
#[derive(Debug, Clone)]
pub struct SourceUnit {
    pub path: PathBuf,
    pub text: String,
}

impl SourceUnit {
    pub fn new(path: impl Into<PathBuf>, text: impl Into<String>) -> Self {
        SourceUnit {
            path: path.into(),
            text: text.into(),
        }
    }

    pub fn read(path: &Path) -> std::io::Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(SourceUnit::new(path, text))
    }
}

#[derive(Debug, Clone)]
struct SourceFile {
    unit: SourceUnit,
    line_starts: Vec<usize>,
}

/// 1-based line/column position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LineCol {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for LineCol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// All files loaded in one compiler invocation.
#[derive(Debug, Clone, Default)]
pub struct SourceMap {
    files: Vec<SourceFile>,
}

impl SourceMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, unit: SourceUnit) -> FileId {
        let mut line_starts = vec![0];
        line_starts.extend(unit.text.match_indices('\n').map(|(i, _)| i + 1));
        self.files.push(SourceFile { unit, line_starts });
        FileId(self.files.len() as u32 - 1)
    }

    pub fn unit(&self, id: FileId) -> &SourceUnit {
        &self.files[id.0 as usize].unit
    }

    pub fn path(&self, id: FileId) -> &Path {
        &self.unit(id).path
    }

    pub fn text(&self, id: FileId) -> &str {
        &self.unit(id).text
    }

    pub fn len(&self) -> usize {
        self.files.len()
    }

    pub fn is_empty(&self) -> bool {
        self.files.is_empty()
    }

    pub fn line_col(&self, file: FileId, offset: u32) -> LineCol {
        let f = &self.files[file.0 as usize];
        let offset = offset as usize;
        let line = match f.line_starts.binary_search(&offset) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        let col = f.unit.text[f.line_starts[line]..offset.min(f.unit.text.len())]
            .chars()
            .count();
        LineCol {
            line: line + 1,
            col: col + 1,
        }
    }

    /// `path:line:col` of the start of `span`.
    pub fn locate(&self, span: Span) -> String {
        if (span.file.0 as usize) >= self.len() {
            return "<unknown>".into();
        }
        let lc = self.line_col(span.file, span.start);
        format!("{}:{}:{}", self.path(span.file).display(), lc.line, lc.col)
    }

    pub fn snippet(&self, span: Span) -> &str {
        let text = self.text(span.file);
        &text[span.start as usize..(span.end as usize).min(text.len())]
    }
}
