use std::fmt::Write as _;

use thiserror::Error;

use crate::knapsack::KnapsackInstance;

/// Malformed instance text; `line` is 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {reason}")]
pub struct ParseError {
    pub line: usize,
    pub reason: String,
}

fn err(line: usize, reason: impl Into<String>) -> ParseError {
    ParseError {
        line,
        reason: reason.into(),
    }
}

fn int_pair(line: usize, text: &str, what: &str) -> Result<(u64, u64), ParseError> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.len() != 2 {
        return Err(err(
            line,
            format!(
                "expected 2 integers ({what}), found {} fields",
                tokens.len()
            ),
        ));
    }
    let parse = |t: &str| {
        t.parse::<u64>()
            .map_err(|_| err(line, format!("'{t}' is not a nonnegative integer")))
    };
    Ok((parse(tokens[0])?, parse(tokens[1])?))
}

/// Parses `n W` followed by `n` lines of `value weight`.
///
/// ```
/// let inst = dilemma_search::io::parse_knapsack("3 8\n10 5\n7 4\n6 4\n").unwrap();
/// assert_eq!(inst.len(), 3);
/// assert_eq!(inst.capacity(), 8);
/// ```
pub fn parse_knapsack(text: &str) -> Result<KnapsackInstance, ParseError> {
    let lines: Vec<&str> = text.lines().collect();
    let header = lines.first().ok_or_else(|| err(1, "empty input"))?;
    let (n, capacity) = int_pair(1, header, "n W")?;
    if capacity == 0 {
        return Err(err(1, "capacity must be ≥ 1"));
    }
    let n = usize::try_from(n).map_err(|_| err(1, "item count too large"))?;

    let mut items = Vec::with_capacity(n);
    for k in 0..n {
        let line = k + 2;
        let text = match lines.get(k + 1) {
            Some(t) if !t.trim().is_empty() => *t,
            _ => return Err(err(line, format!("expected {n} items, found {k}"))),
        };
        let (value, weight) = int_pair(line, text, "value weight")?;
        if weight == 0 {
            return Err(err(line, "weight must be ≥ 1"));
        }
        items.push((value, weight));
    }
    if let Some(extra) = lines
        .iter()
        .enumerate()
        .skip(n + 1)
        .find(|(_, t)| !t.trim().is_empty())
    {
        return Err(err(
            extra.0 + 1,
            format!("trailing content after {n} items"),
        ));
    }
    KnapsackInstance::new(&items, capacity).map_err(|e| err(1, e.to_string()))
}

pub fn format_knapsack(instance: &KnapsackInstance) -> String {
    let mut out = format!("{} {}\n", instance.len(), instance.capacity());
    for item in instance.items() {
        writeln!(out, "{} {}", item.value, item.weight).unwrap();
    }
    out
}
