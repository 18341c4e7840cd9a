//! JSON form of Tor tables.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use toric_tor::{GradedPiece, Integer, TorTable};

use crate::problem::CoefficientsJson;
use crate::CliError;

/// Torsion orders that fit an `i64` are plain numbers, larger ones strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum Order {
    Small(i64),
    Large(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub p: i64,
    pub q: i64,
    pub free_rank: usize,
    torsion: Vec<Order>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    pub coefficients: CoefficientsJson,
    pub max_total_degree: usize,
    pub rank: usize,
    pub entries: Vec<EntryJson>,
}

impl TableJson {
    pub fn from_table(t: &TorTable) -> Self {
        let entries = t
            .entries
            .iter()
            .map(|(&(p, q), g)| EntryJson {
                p,
                q,
                free_rank: g.free_rank,
                torsion: g.torsion.iter().map(|d| d.to_i64().map_or_else(|| Order::Large(d.to_string()), Order::Small)).collect(),
            })
            .collect();
        TableJson {
            coefficients: CoefficientsJson::from_coefficients(t.coefficients),
            max_total_degree: t.max_total_degree,
            rank: t.rank,
            entries,
        }
    }

    pub fn to_table(&self) -> Result<TorTable, CliError> {
        let mut entries = BTreeMap::new();
        for e in &self.entries {
            let torsion = e
                .torsion
                .iter()
                .map(|d| match d {
                    Order::Small(x) => Ok(Integer::from(*x)),
                    Order::Large(s) => s.parse().map_err(|_| CliError::Input(format!("bad torsion order `{s}`"))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            entries.insert((e.p, e.q), GradedPiece::new(e.free_rank, torsion));
        }
        Ok(TorTable {
            coefficients: self.coefficients.to_coefficients()?,
            max_total_degree: self.max_total_degree,
            rank: self.rank,
            entries,
        })
    }
}

pub fn table_to_json(t: &TorTable) -> serde_json::Value {
    serde_json::to_value(TableJson::from_table(t)).expect("tables serialize")
}

pub fn table_from_json(text: &str) -> Result<TorTable, CliError> {
    let t: TableJson = serde_json::from_str(text).map_err(|e| CliError::Input(e.to_string()))?;
    t.to_table()
}
