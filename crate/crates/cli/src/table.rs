use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::ValueEnum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Md,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Md => "md",
        }
    }
}

/// A named rectangular table of preformatted cells.
pub struct Table {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: impl Into<String>, header: &[&str]) -> Self {
        Self {
            name: name.into(),
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn with_header(name: impl Into<String>, header: Vec<String>) -> Self {
        Self {
            name: name.into(),
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header).expect("in-memory write");
                for r in &self.rows {
                    w.write_record(r).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
            }
            Format::Md => {
                let widths: Vec<usize> = (0..self.header.len())
                    .map(|c| {
                        self.rows
                            .iter()
                            .map(|r| r[c].len())
                            .chain([self.header[c].len(), 3])
                            .max()
                            .unwrap_or(3)
                    })
                    .collect();
                let line = |cells: &[String]| {
                    let mut s = String::from("|");
                    for (cell, w) in cells.iter().zip(&widths) {
                        let _ = write!(s, " {cell:>w$} |");
                    }
                    s.push('\n');
                    s
                };
                let mut s = line(&self.header);
                s.push('|');
                for w in &widths {
                    let _ = write!(s, "{}|", "-".repeat(w + 2));
                }
                s.push('\n');
                for r in &self.rows {
                    s.push_str(&line(r));
                }
                s
            }
        }
    }
}

pub fn num(v: f64) -> String {
    format!("{v:.6}")
}

/// Print tables to stdout, or write `<name>.<ext>` files under `out`.
pub fn emit(tables: &[Table], format: Format, out: Option<&Path>) -> io::Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    match out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            for t in tables {
                let path = dir.join(format!("{}.{}", t.name, format.extension()));
                fs::write(&path, t.render(format))?;
                written.push(path);
            }
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            for (i, t) in tables.iter().enumerate() {
                if tables.len() > 1 {
                    if i > 0 {
                        writeln!(lock)?;
                    }
                    match format {
                        Format::Csv => writeln!(lock, "# {}", t.name)?,
                        Format::Md => writeln!(lock, "## {}\n", t.name)?,
                    }
                }
                lock.write_all(t.render(format).as_bytes())?;
            }
        }
    }
    Ok(written)
}
