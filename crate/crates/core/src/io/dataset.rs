use std::collections::BTreeSet;
use std::str::FromStr;

use thiserror::Error;

use crate::tree::{bin_label, quantize_numeric, Attribute, Dataset, Row, TreeError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DatasetError {
    /// `line` is the 1-based line in the file, `column` the 1-based field.
    #[error("line {line}, column {column}: {reason}")]
    Parse {
        line: usize,
        column: usize,
        reason: String,
    },
    #[error("line {0}: wrong number of cells")]
    RaggedRow(usize),
    #[error("bad bin spec '{0}' (expected <column>:<bins>)")]
    BadBinSpec(String),
    #[error("bin spec names unknown column '{0}'")]
    UnknownColumn(String),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// Request to quantize a numeric column, written `name:k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinSpec {
    pub column: String,
    pub bins: usize,
}

impl FromStr for BinSpec {
    type Err = DatasetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || DatasetError::BadBinSpec(s.to_string());
        let (column, k) = s.rsplit_once(':').ok_or_else(bad)?;
        let bins = k.trim().parse().map_err(|_| bad())?;
        if column.is_empty() {
            return Err(bad());
        }
        Ok(Self {
            column: column.to_string(),
            bins,
        })
    }
}

/// Bin edges applied to one column, kept for reuse on other data.
#[derive(Debug, Clone, PartialEq)]
pub struct ColumnBinning {
    pub column: String,
    pub edges: Vec<f64>,
    pub constant: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LoadedDataset {
    pub dataset: Dataset,
    pub binnings: Vec<ColumnBinning>,
}

/// Parses a comma-separated file whose last column is the class label.
///
/// Cells are categorical strings except for columns named in `bins`, which
/// are read as numbers and quantized into equal-width bins. Attribute value
/// sets are sorted; binned columns keep bin order.
pub fn parse_dataset(text: &str, bins: &[BinSpec]) -> Result<LoadedDataset, DatasetError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or(DatasetError::Parse {
        line: 1,
        column: 1,
        reason: "missing header".into(),
    })?;
    let names: Vec<String> = header.split(',').map(|c| c.trim().to_string()).collect();
    if names.len() < 2 {
        return Err(DatasetError::Parse {
            line: 1,
            column: 1,
            reason: "need at least one attribute and a class column".into(),
        });
    }
    let width = names.len();

    let mut cells: Vec<Vec<String>> = Vec::new();
    let mut line_of = Vec::new();
    for (line, text) in lines {
        let row: Vec<String> = text.split(',').map(|c| c.trim().to_string()).collect();
        if row.len() != width {
            return Err(DatasetError::RaggedRow(line));
        }
        if let Some(col) = row.iter().position(|c| c.is_empty()) {
            return Err(DatasetError::Parse {
                line,
                column: col + 1,
                reason: "empty cell".into(),
            });
        }
        cells.push(row);
        line_of.push(line);
    }
    if cells.is_empty() {
        return Err(DatasetError::Parse {
            line: 2,
            column: 1,
            reason: "no data rows".into(),
        });
    }

    let mut binned: Vec<Option<usize>> = vec![None; width];
    for spec in bins {
        let col = names
            .iter()
            .position(|n| *n == spec.column)
            .filter(|&c| c + 1 < width)
            .ok_or_else(|| DatasetError::UnknownColumn(spec.column.clone()))?;
        binned[col] = Some(spec.bins);
    }

    let mut binnings = Vec::new();
    for col in 0..width {
        let Some(k) = binned[col] else { continue };
        let numbers = cells
            .iter()
            .zip(&line_of)
            .map(|(row, &line)| {
                row[col].parse::<f64>().map_err(|_| DatasetError::Parse {
                    line,
                    column: col + 1,
                    reason: format!("'{}' is not a number", row[col]),
                })
            })
            .collect::<Result<Vec<f64>, _>>()?;
        let q = quantize_numeric(&numbers, k)?;
        for (row, label) in cells.iter_mut().zip(q.labels) {
            row[col] = label;
        }
        binnings.push(ColumnBinning {
            column: names[col].clone(),
            edges: q.edges,
            constant: q.constant,
        });
    }

    let value_sets: Vec<Vec<String>> = (0..width)
        .map(|col| match binned[col] {
            Some(_) => {
                let used = binnings
                    .iter()
                    .find(|b| b.column == names[col])
                    .map_or(1, |b| b.edges.len() + 1);
                (0..used).map(bin_label).collect()
            }
            None => cells
                .iter()
                .map(|r| r[col].clone())
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect(),
        })
        .collect();
    let index = |col: usize, v: &str| value_sets[col].iter().position(|x| x == v).unwrap() as u32;

    let class_col = width - 1;
    let rows = cells
        .iter()
        .enumerate()
        .map(|(id, r)| Row {
            id,
            values: (0..class_col).map(|c| index(c, &r[c])).collect(),
            class: index(class_col, &r[class_col]),
        })
        .collect();
    let attributes = (0..class_col)
        .map(|c| Attribute {
            name: names[c].clone(),
            values: value_sets[c].clone(),
        })
        .collect();
    let dataset = Dataset::new(
        attributes,
        names[class_col].clone(),
        value_sets[class_col].clone(),
        rows,
    )?;
    Ok(LoadedDataset { dataset, binnings })
}

/// Writes a dataset back as CSV with its string labels.
pub fn format_dataset(data: &Dataset) -> String {
    let mut out = String::new();
    let names: Vec<&str> = data
        .attributes()
        .iter()
        .map(|a| a.name.as_str())
        .chain(std::iter::once(data.class_name()))
        .collect();
    out.push_str(&names.join(","));
    out.push('\n');
    for row in data.rows() {
        let cells: Vec<&str> = row
            .values
            .iter()
            .zip(data.attributes())
            .map(|(&v, a)| a.values[v as usize].as_str())
            .chain(std::iter::once(data.classes()[row.class as usize].as_str()))
            .collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str =
        "outlook,windy,play\nsunny,no,yes\nrain,yes,no\nsunny,yes,yes\novercast,no,yes\n";

    #[test]
    fn parses_schema_and_rows() {
        let d = parse_dataset(SMALL, &[]).unwrap().dataset;
        assert_eq!(d.attributes().len(), 2);
        assert_eq!(d.len(), 4);
        assert_eq!(d.attributes()[0].values, vec!["overcast", "rain", "sunny"]);
        assert_eq!(d.classes(), &["no".to_string(), "yes".to_string()]);
        assert_eq!(d.rows()[1].values, vec![1, 1]);
        assert_eq!(d.rows()[1].class, 0);
    }

    #[test]
    fn ragged_row() {
        let text = "a,b,c\n1,2,x\n1,y\n";
        assert_eq!(parse_dataset(text, &[]), Err(DatasetError::RaggedRow(3)));
    }

    #[test]
    fn empty_cell_has_coordinates() {
        let text = "a,b,c\n1,,x\n";
        assert!(matches!(
            parse_dataset(text, &[]),
            Err(DatasetError::Parse {
                line: 2,
                column: 2,
                ..
            })
        ));
    }

    #[test]
    fn binned_column() {
        let text = "x,c\n0,a\n5,b\n10,a\n";
        let spec: BinSpec = "x:2".parse().unwrap();
        let loaded = parse_dataset(text, &[spec]).unwrap();
        let d = &loaded.dataset;
        assert_eq!(d.attributes()[0].values, vec!["b0", "b1"]);
        let vals: Vec<u32> = d.rows().iter().map(|r| r.values[0]).collect();
        assert_eq!(vals, vec![0, 0, 1]);
        assert_eq!(loaded.binnings[0].edges, vec![5.0]);
    }

    #[test]
    fn bin_spec_errors() {
        assert!("x".parse::<BinSpec>().is_err());
        assert!("x:k".parse::<BinSpec>().is_err());
        let spec: BinSpec = "nope:2".parse().unwrap();
        assert_eq!(
            parse_dataset(SMALL, &[spec]),
            Err(DatasetError::UnknownColumn("nope".into()))
        );
        let text = "x,c\n0,a\nfoo,b\n";
        assert!(matches!(
            parse_dataset(text, &["x:2".parse().unwrap()]),
            Err(DatasetError::Parse {
                line: 3,
                column: 1,
                ..
            })
        ));
    }

    #[test]
    fn csv_round_trip() {
        let d = parse_dataset(SMALL, &[]).unwrap().dataset;
        let again = parse_dataset(&format_dataset(&d), &[]).unwrap().dataset;
        assert_eq!(d, again);
    }
}
