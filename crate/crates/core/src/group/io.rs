use serde::{Deserialize, Serialize};

use super::FiniteGroup;
use crate::error::{Error, Result};

/// Cayley-table text: first line `n`, then `n` rows of `n` space-separated indices.
pub fn parse_table_text(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let n: usize = lines
        .next()
        .ok_or_else(|| Error::Parse("empty table file".into()))?
        .parse()
        .map_err(|_| Error::Parse("first line must be the order".into()))?;
    let rows: Vec<Vec<usize>> = lines
        .map(|l| {
            l.split_whitespace()
                .map(|t| {
                    t.parse()
                        .map_err(|_| Error::Parse(format!("bad entry `{t}`")))
                })
                .collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<_>>()?;
    if rows.len() != n {
        return Err(Error::Parse(format!(
            "expected {n} rows, found {}",
            rows.len()
        )));
    }
    Ok(rows)
}

pub fn table_text(g: &FiniteGroup) -> String {
    let mut out = format!("{}\n", g.order());
    for row in g.table() {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// Permutation file: first line the degree, then one generator per line as its image list.
pub fn parse_permutation_text(text: &str) -> Result<(usize, Vec<Vec<usize>>)> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let degree: usize = lines
        .next()
        .ok_or_else(|| Error::Parse("empty permutation file".into()))?
        .parse()
        .map_err(|_| Error::Parse("first line must be the degree".into()))?;
    let gens = lines
        .map(|l| {
            l.split_whitespace()
                .map(|t| {
                    t.parse()
                        .map_err(|_| Error::Parse(format!("bad image `{t}`")))
                })
                .collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<_>>()?;
    Ok((degree, gens))
}

/// JSON export of a group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    pub labels: Vec<String>,
    pub source_spec: Option<String>,
}

impl GroupFile {
    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupFile {
            order: g.order(),
            table: g.table(),
            labels: g.labels().to_vec(),
            source_spec: g.source_spec().map(str::to_string),
        }
    }

    pub fn into_group(self) -> Result<FiniteGroup> {
        if self.table.len() != self.order {
            return Err(Error::Parse(format!(
                "order {} but table has {} rows",
                self.order,
                self.table.len()
            )));
        }
        let mut g = FiniteGroup::from_cayley_table(&self.table, Some(self.labels))?;
        g.set_source(self.source_spec);
        Ok(g)
    }
}
