use serde_json::Value;

use crate::args::Format;

/// A tabular view used for TSV output.
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

pub struct Doc {
    pub json: Value,
    /// Preferred TSV layout; without one the JSON is flattened to `path<TAB>value` rows.
    pub table: Option<Table>,
}

impl Doc {
    pub fn json(json: Value) -> Self {
        Doc { json, table: None }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Table) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let p = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&p, x, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        Value::Array(a) => out.push(vec![
            prefix.to_string(),
            a.iter().map(scalar).collect::<Vec<_>>().join(","),
        ]),
        other => out.push(vec![prefix.to_string(), scalar(other)]),
    }
}

fn tsv_cell(s: &str) -> String {
    s.replace(['\t', '\n'], " ")
}

pub fn render(doc: &Doc, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&doc.json).expect("document serializes");
            s.push('\n');
            s
        }
        Format::Tsv => {
            let owned;
            let table = match &doc.table {
                Some(t) => t,
                None => {
                    let mut t = Table::new(&["key", "value"]);
                    flatten("", &doc.json, &mut t);
                    owned = t;
                    &owned
                }
            };
            let mut s = String::new();
            for row in std::iter::once(&table.header).chain(&table.rows) {
                let cells: Vec<String> = row.iter().map(|c| tsv_cell(c)).collect();
                s.push_str(&cells.join("\t"));
                s.push('\n');
            }
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn flattened_tsv() {
        let d = Doc::json(json!({"a": {"b": [1, 2]}, "c": [{"d": "x\ty"}], "e": null}));
        assert_eq!(render(&d, Format::Tsv), "key\tvalue\na.b\t1,2\nc[0].d\tx y\ne\t\n");
    }
}
