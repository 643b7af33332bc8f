//! Gene-set collections in GMT format.

use std::collections::{BTreeSet, HashSet};
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_MIN_SET_SIZE: usize = 15;
pub const DEFAULT_MAX_SET_SIZE: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneSet {
    pub name: String,
    pub description: String,
    /// Sorted and deduplicated.
    pub members: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilteredSet {
    pub name: String,
    pub size: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneSetCollection {
    pub sets: Vec<GeneSet>,
    pub min_size: usize,
    pub max_size: usize,
    pub filtered_out: Vec<FilteredSet>,
}

impl GeneSetCollection {
    pub fn new(sets: Vec<GeneSet>) -> Result<Self> {
        let mut names = HashSet::new();
        for s in &sets {
            if !names.insert(s.name.as_str()) {
                return Err(Error::DuplicateId(s.name.clone()));
            }
        }
        Ok(Self {
            sets,
            min_size: 0,
            max_size: usize::MAX,
            filtered_out: Vec::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Restricts every set to `universe` and keeps those whose restricted
    /// size lies in `[min_size, max_size]`; the others are reported in
    /// `filtered_out`.
    pub fn filter<'a>(&self, universe: impl IntoIterator<Item = &'a str>, min_size: usize, max_size: usize) -> Self {
        let universe: HashSet<&str> = universe.into_iter().collect();
        let mut kept = Vec::new();
        let mut filtered_out = self.filtered_out.clone();
        for s in &self.sets {
            let members: Vec<String> = s.members.iter().filter(|m| universe.contains(m.as_str())).cloned().collect();
            let size = members.len();
            if size < min_size || size > max_size {
                filtered_out.push(FilteredSet {
                    name: s.name.clone(),
                    size,
                    reason: format!("{size} members in the ranked list, outside [{min_size}, {max_size}]"),
                });
            } else {
                kept.push(GeneSet {
                    name: s.name.clone(),
                    description: s.description.clone(),
                    members,
                });
            }
        }
        Self {
            sets: kept,
            min_size,
            max_size,
            filtered_out,
        }
    }

    pub fn write_gmt<W: Write>(&self, mut out: W) -> Result<()> {
        for s in &self.sets {
            write!(out, "{}\t{}", s.name, s.description)?;
            for m in &s.members {
                write!(out, "\t{m}")?;
            }
            writeln!(out)?;
        }
        Ok(())
    }
}

/// Parses GMT text: `name<TAB>description<TAB>member...` per line.
pub fn load_gmt<R: BufRead>(input: R, source: &str) -> Result<GeneSetCollection> {
    let mut sets = Vec::new();
    let mut names = HashSet::new();
    for (idx, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.trim_end_matches(['\r', '\n']).split('\t').collect();
        if fields.len() < 3 {
            return Err(Error::Parse {
                path: source.into(),
                line: idx + 1,
                column: fields.len() + 1,
                message: format!("a gene set line needs name, description and members; found {} fields", fields.len()),
            });
        }
        let name = fields[0].trim().to_string();
        if name.is_empty() {
            return Err(Error::Parse {
                path: source.into(),
                line: idx + 1,
                column: 1,
                message: "empty gene set name".into(),
            });
        }
        if !names.insert(name.clone()) {
            return Err(Error::DuplicateId(name));
        }
        let members: BTreeSet<String> = fields[2..]
            .iter()
            .map(|m| m.trim())
            .filter(|m| !m.is_empty())
            .map(str::to_string)
            .collect();
        sets.push(GeneSet {
            name,
            description: fields[1].trim().to_string(),
            members: members.into_iter().collect(),
        });
    }
    if sets.is_empty() {
        return Err(Error::Empty(format!("{source} contains no gene sets")));
    }
    GeneSetCollection::new(sets)
}

pub fn load_gmt_path(path: &Path) -> Result<GeneSetCollection> {
    load_gmt(BufReader::new(File::open(path)?), &path.display().to_string())
}
