//! Count matrices as CSV: a header row of taxon names after an id column,
//! then one row per sample of nonnegative integer counts.

use std::io::{Read, Write};
use std::path::Path;

use ebcount_core::CountVector;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct CountMatrixFile {
    /// Header of the identifier column.
    pub id_header: String,
    pub taxa: Vec<String>,
    pub rows: Vec<(String, CountVector)>,
}

impl CountMatrixFile {
    pub fn k(&self) -> usize {
        self.taxa.len()
    }

    pub fn read(path: &Path) -> Result<Self> {
        let file = std::fs::File::open(path).map_err(|source| CliError::Read {
            path: path.into(),
            source,
        })?;
        Self::from_reader(file).map_err(|message| CliError::data(path, message))
    }

    /// Parses the CSV dialect; errors carry the 1-based line number.
    pub fn from_reader<R: Read>(reader: R) -> std::result::Result<Self, String> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .from_reader(reader);
        let mut records = rdr.records();

        let header = match records.next() {
            Some(r) => r.map_err(|e| e.to_string())?,
            None => return Err("empty file".into()),
        };
        let mut fields = header.iter().map(|s| s.trim().to_string());
        let id_header = fields.next().unwrap_or_default();
        let taxa: Vec<String> = fields.collect();
        if taxa.len() < 2 {
            return Err(format!(
                "line 1: need at least 2 taxon columns, found {}",
                taxa.len()
            ));
        }
        let mut seen = std::collections::HashSet::new();
        for t in &taxa {
            if t.is_empty() {
                return Err("line 1: empty taxon name".into());
            }
            if !seen.insert(t.as_str()) {
                return Err(format!("line 1: taxon {t:?} appears twice"));
            }
        }

        let mut rows = Vec::new();
        for record in records {
            let record = record.map_err(|e| e.to_string())?;
            let line = record.position().map_or(0, |p| p.line());
            if record.len() != taxa.len() + 1 {
                return Err(format!(
                    "line {line}: expected {} fields, found {}",
                    taxa.len() + 1,
                    record.len()
                ));
            }
            let id = record[0].trim().to_string();
            let counts = record
                .iter()
                .skip(1)
                .zip(&taxa)
                .map(|(v, taxon)| {
                    v.trim().parse::<u64>().map_err(|_| {
                        format!("line {line}, column {taxon}: {v:?} is not a nonnegative integer")
                    })
                })
                .collect::<std::result::Result<Vec<_>, _>>()?;
            let counts = CountVector::new(counts).map_err(|e| format!("line {line}: {e}"))?;
            rows.push((id, counts));
        }
        Ok(Self {
            id_header,
            taxa,
            rows,
        })
    }

    pub fn to_writer<W: Write>(&self, writer: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(std::iter::once(&self.id_header).chain(&self.taxa))?;
        for (id, counts) in &self.rows {
            let mut record = vec![id.clone()];
            record.extend(counts.counts().iter().map(u64::to_string));
            w.write_record(&record)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let file = std::fs::File::create(path).map_err(|source| CliError::Write {
            path: path.into(),
            source,
        })?;
        self.to_writer(file).map_err(|e| CliError::Write {
            path: path.into(),
            source: e.into(),
        })
    }
}
