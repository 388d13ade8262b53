use super::TreeError;

/// A categorical attribute and its ordered value set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Attribute {
    pub name: String,
    pub values: Vec<String>,
}

/// One labelled example. Values and class are indices into the schema.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Row {
    /// Position in the source data; used to check that splits are disjoint.
    pub id: usize,
    pub values: Vec<u32>,
    pub class: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    attributes: Vec<Attribute>,
    class_name: String,
    classes: Vec<String>,
    rows: Vec<Row>,
}

impl Dataset {
    pub fn new(
        attributes: Vec<Attribute>,
        class_name: impl Into<String>,
        classes: Vec<String>,
        rows: Vec<Row>,
    ) -> Result<Self, TreeError> {
        if classes.is_empty() {
            return Err(TreeError::Invalid("no classes".into()));
        }
        if rows.is_empty() {
            return Err(TreeError::Invalid("no rows".into()));
        }
        for row in &rows {
            if row.values.len() != attributes.len() {
                return Err(TreeError::Invalid(format!(
                    "row {} has {} values for {} attributes",
                    row.id,
                    row.values.len(),
                    attributes.len()
                )));
            }
            if row.class as usize >= classes.len() {
                return Err(TreeError::Invalid(format!(
                    "row {}: class out of range",
                    row.id
                )));
            }
            if let Some(j) = (0..attributes.len())
                .find(|&j| row.values[j] as usize >= attributes[j].values.len())
            {
                return Err(TreeError::Invalid(format!(
                    "row {}: value of '{}' out of range",
                    row.id, attributes[j].name
                )));
            }
        }
        Ok(Self {
            attributes,
            class_name: class_name.into(),
            classes,
            rows,
        })
    }

    pub fn attributes(&self) -> &[Attribute] {
        &self.attributes
    }

    pub fn class_name(&self) -> &str {
        &self.class_name
    }

    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn same_schema(&self, other: &Dataset) -> bool {
        self.attributes == other.attributes
            && self.classes == other.classes
            && self.class_name == other.class_name
    }

    /// Dataset made of the rows at the given positions, same schema.
    pub fn select(&self, positions: &[usize]) -> Result<Self, TreeError> {
        let rows = positions.iter().map(|&i| self.rows[i].clone()).collect();
        Self::new(
            self.attributes.clone(),
            self.class_name.clone(),
            self.classes.clone(),
            rows,
        )
    }

    /// Class histogram over the rows at `positions`.
    pub fn class_counts(&self, positions: &[usize]) -> Vec<usize> {
        let mut counts = vec![0; self.classes.len()];
        for &i in positions {
            counts[self.rows[i].class as usize] += 1;
        }
        counts
    }

    /// Most frequent class, ties to the lowest class index.
    pub fn majority(&self, positions: &[usize]) -> u32 {
        majority_of(&self.class_counts(positions))
    }
}

pub(crate) fn majority_of(counts: &[usize]) -> u32 {
    let mut best = 0;
    for (c, &n) in counts.iter().enumerate() {
        if n > counts[best] {
            best = c;
        }
    }
    best as u32
}

/// Shannon entropy in bits of a class histogram.
pub fn entropy(counts: &[usize]) -> Result<f64, TreeError> {
    let total: usize = counts.iter().sum();
    if total == 0 {
        return Err(TreeError::EmptySubset);
    }
    let total = total as f64;
    Ok(-counts
        .iter()
        .filter(|&&n| n > 0)
        .map(|&n| {
            let p = n as f64 / total;
            p * p.log2()
        })
        .sum::<f64>())
}

/// Information gain of splitting the rows at `positions` on `attribute`.
///
/// Clamped to `[0, H(T)]` to absorb rounding.
pub fn info_gain(data: &Dataset, positions: &[usize], attribute: usize) -> Result<f64, TreeError> {
    let attr = data
        .attributes
        .get(attribute)
        .ok_or(TreeError::UnknownAttribute(attribute))?;
    let n_classes = data.classes.len();
    let mut table = vec![0usize; attr.values.len() * n_classes];
    let mut totals = vec![0usize; n_classes];
    for &i in positions {
        let row = &data.rows[i];
        table[row.values[attribute] as usize * n_classes + row.class as usize] += 1;
        totals[row.class as usize] += 1;
    }
    let h = entropy(&totals)?;
    let n = positions.len() as f64;
    let mut remainder = 0.0;
    for part in table.chunks(n_classes) {
        let size: usize = part.iter().sum();
        if size > 0 {
            remainder += size as f64 / n * entropy(part)?;
        }
    }
    Ok((h - remainder).clamp(0.0, h))
}
