use serde::Serialize;
use serde_json::Value;

use crate::CliError;

const SIGNIFICANT_DIGITS: usize = 15;

/// Rounds to 15 significant digits.
pub fn round_sig(v: f64) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, v)
        .parse()
        .expect("formatted float parses")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Real(f64),
    Int(i64),
    Bool(bool),
}

impl Cell {
    fn render(self) -> String {
        match self {
            Cell::Real(v) => round_sig(v).to_string(),
            Cell::Int(v) => v.to_string(),
            Cell::Bool(v) => v.to_string(),
        }
    }

    fn rounded(self) -> Self {
        match self {
            Cell::Real(v) => Cell::Real(round_sig(v)),
            other => other,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub command: &'static str,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(command: &'static str, columns: Vec<String>) -> Self {
        Self {
            command,
            columns,
            rows: Vec::new(),
        }
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    fn check_finite(&self) -> Result<(), CliError> {
        for (r, row) in self.rows.iter().enumerate() {
            for (c, cell) in row.iter().enumerate() {
                if let Cell::Real(v) = cell {
                    if !v.is_finite() {
                        return Err(CliError::Internal(format!(
                            "non-finite value in row {r}, column `{}`",
                            self.columns[c]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        self.check_finite()?;
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| CliError::Internal(e.to_string());
        w.write_record(&self.columns).map_err(io)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|c| c.render())).map_err(io)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| CliError::Internal(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Internal(e.to_string()))
    }

    pub fn to_json(&self) -> Result<String, CliError> {
        self.check_finite()?;
        let rounded = Table {
            command: self.command,
            columns: self.columns.clone(),
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|c| c.rounded()).collect())
                .collect(),
        };
        to_pretty(&rounded)
    }
}

pub(crate) fn to_pretty(value: &impl Serialize) -> Result<String, CliError> {
    let mut s =
        serde_json::to_string_pretty(value).map_err(|e| CliError::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Rounds every float in a JSON document to 15 significant digits.
pub fn round_json(value: Value) -> Value {
    match value {
        Value::Number(n) if n.is_f64() => n
            .as_f64()
            .and_then(|v| serde_json::Number::from_f64(round_sig(v)))
            .map(Value::Number)
            .unwrap_or(Value::Null),
        Value::Array(items) => Value::Array(items.into_iter().map(round_json).collect()),
        Value::Object(map) => {
            Value::Object(map.into_iter().map(|(k, v)| (k, round_json(v))).collect())
        }
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(round_sig(0.1 + 0.2), 0.3);
        assert_eq!(round_sig(2f64.sqrt() - 1.0), 0.414213562373095);
        assert_eq!(round_sig(-1.0 / 3.0), -0.333333333333333);
        assert_eq!(round_sig(0.0), 0.0);
        assert_eq!(round_sig(1e-300 / 3.0), 3.33333333333333e-301);
    }

    #[test]
    fn csv_and_json_shapes() {
        let mut t = Table::new("demo", vec!["a".into(), "n".into(), "ok".into()]);
        t.rows
            .push(vec![Cell::Real(1.0 / 3.0), Cell::Int(-1), Cell::Bool(true)]);
        assert_eq!(t.to_csv().unwrap(), "a,n,ok\n0.333333333333333,-1,true\n");
        let v: Value = serde_json::from_str(&t.to_json().unwrap()).unwrap();
        assert_eq!(v["rows"][0][0], 0.333333333333333);
        assert_eq!(v["rows"][0][1], -1);
        assert_eq!(v["columns"][2], "ok");
    }

    #[test]
    fn non_finite_is_internal_error() {
        let mut t = Table::new("demo", vec!["a".into()]);
        t.rows.push(vec![Cell::Real(f64::NAN)]);
        assert!(matches!(t.to_csv(), Err(CliError::Internal(_))));
    }

    #[test]
    fn round_json_nested() {
        let v = serde_json::json!({"a": [0.1 + 0.2, 1], "b": {"c": 1.0 / 7.0}});
        let r = round_json(v);
        assert_eq!(r["a"][0], 0.3);
        assert_eq!(r["a"][1], 1);
        assert_eq!(r["b"]["c"], 0.142857142857143);
    }
}
