//! Tabular experiment output and its CSV form.

use kernstab_core::analysis::BoundCheck;
use kernstab_core::io::format_g17;

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Int(i64),
    Bool(bool),
    Text(String),
}

impl Value {
    fn render(&self) -> String {
        match self {
            Value::Num(x) => format_g17(*x),
            Value::Int(i) => i.to_string(),
            Value::Bool(b) => b.to_string(),
            Value::Text(s) => s.clone(),
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Value::Num(x) => Some(*x),
            Value::Int(i) => Some(*i as f64),
            Value::Text(s) => s.parse().ok(),
            Value::Bool(_) => None,
        }
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Value::Bool(b) => Some(*b),
            Value::Text(s) => s.parse().ok(),
            _ => None,
        }
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Num(x)
    }
}

impl From<usize> for Value {
    fn from(x: usize) -> Self {
        Value::Int(x as i64)
    }
}

impl From<bool> for Value {
    fn from(x: bool) -> Self {
        Value::Bool(x)
    }
}

impl From<&str> for Value {
    fn from(x: &str) -> Self {
        Value::Text(x.to_string())
    }
}

/// A table whose every row starts with the configuration hash.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub comment: String,
    pub hash: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(comment: impl Into<String>, hash: impl Into<String>, columns: &[&str]) -> Self {
        Self {
            comment: comment.into(),
            hash: hash.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Numeric column by name; unparsable cells become NaN.
    pub fn column_f64(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.column_index(name)?;
        Some(self.rows.iter().map(|r| r[j].as_f64().unwrap_or(f64::NAN)).collect())
    }

    pub fn column_bool(&self, name: &str) -> Option<Vec<bool>> {
        let j = self.column_index(name)?;
        Some(self.rows.iter().map(|r| r[j].as_bool().unwrap_or(false)).collect())
    }

    /// `# comment`, header, then rows; `%.17g` numbers, LF endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str("# ");
        out.push_str(&self.comment);
        out.push('\n');
        out.push_str("config_hash,");
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&self.hash);
            for v in row {
                out.push(',');
                out.push_str(&v.render());
            }
            out.push('\n');
        }
        out
    }

    /// Reads back [`to_csv`](Self::to_csv) output; cells come back as text.
    pub fn from_csv(text: &str) -> Result<Self, String> {
        let mut lines = text.lines();
        let comment = lines
            .next()
            .and_then(|l| l.strip_prefix("# "))
            .ok_or("missing comment line")?
            .to_string();
        let header = lines.next().ok_or("missing header")?;
        let mut cols = header.split(',');
        if cols.next() != Some("config_hash") {
            return Err("first column must be config_hash".into());
        }
        let columns: Vec<String> = cols.map(str::to_string).collect();
        let mut hash = String::new();
        let mut rows = Vec::new();
        for line in lines {
            let mut cells = line.split(',');
            let h = cells.next().ok_or("empty row")?;
            if hash.is_empty() {
                hash = h.to_string();
            } else if hash != h {
                return Err(format!("mixed config hashes {hash} and {h}"));
            }
            let row: Vec<Value> = cells.map(|c| Value::Text(c.to_string())).collect();
            if row.len() != columns.len() {
                return Err(format!("row has {} cells, header {}", row.len(), columns.len()));
            }
            rows.push(row);
        }
        Ok(Self {
            comment,
            hash,
            columns,
            rows,
        })
    }
}

/// Columns of a check table after any leading context columns.
pub const CHECK_COLUMNS: [&str; 6] = ["name", "lhs", "rhs", "slack", "satisfied", "reliability"];

pub fn check_cells(c: &BoundCheck) -> Vec<Value> {
    vec![
        Value::Text(c.name.clone()),
        Value::Num(c.lhs),
        Value::Num(c.rhs),
        Value::Num(c.slack),
        Value::Bool(c.satisfied),
        Value::Text(c.reliability.name().to_string()),
    ]
}

/// Tally of a list of checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    /// Violated but unreliable or degenerate; never a failure.
    pub excused: usize,
}

impl Summary {
    pub fn of<'a>(checks: impl IntoIterator<Item = &'a BoundCheck>) -> Self {
        let mut s = Summary::default();
        for c in checks {
            if c.satisfied {
                s.passed += 1;
            } else if c.is_failure() {
                s.failed += 1;
            } else {
                s.excused += 1;
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip() {
        let mut t = Table::new("kernstab test", "abcd", &["n", "x", "ok", "label"]);
        t.push(vec![10usize.into(), 0.1.into(), true.into(), "a".into()]);
        t.push(vec![11usize.into(), (-2.5e-16).into(), false.into(), "b".into()]);
        let text = t.to_csv();
        assert_eq!(
            text,
            "# kernstab test\nconfig_hash,n,x,ok,label\nabcd,10,0.10000000000000001,true,a\nabcd,11,-2.5000000000000002e-16,false,b\n"
        );
        let back = Table::from_csv(&text).unwrap();
        assert_eq!(back.column_f64("x").unwrap(), vec![0.1, -2.5e-16]);
        assert_eq!(back.column_bool("ok").unwrap(), vec![true, false]);
        assert_eq!(back.to_csv(), text);
        assert!(Table::from_csv("no comment").is_err());
    }

    #[test]
    fn summary_counts() {
        use kernstab_core::Reliability;
        let checks = [
            BoundCheck::new("a", 0.0, 1.0, 0.0),
            BoundCheck::new("b", 2.0, 1.0, 0.0),
            BoundCheck::new("c", 2.0, 1.0, 0.0).with_reliability(Reliability::BelowPrecisionFloor),
        ];
        assert_eq!(
            Summary::of(&checks),
            Summary {
                passed: 1,
                failed: 1,
                excused: 1
            }
        );
    }
}
