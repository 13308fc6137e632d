use ambistack::{CommitmentKind, CommitmentSet, MixedStrategy, Rational};
use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

/// Report tree rendered identically by every output format.
#[derive(Debug, Clone)]
pub enum Field {
    Text(String),
    Num(Rational),
    Int(u64),
    Bool(bool),
    Missing,
    List(Vec<Field>),
    Obj(Vec<(String, Field)>),
}

impl Field {
    pub fn obj<K: Into<String>>(entries: impl IntoIterator<Item = (K, Field)>) -> Field {
        Field::Obj(entries.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }

    pub fn text(s: impl Into<String>) -> Field {
        Field::Text(s.into())
    }

    pub fn num(r: &Rational) -> Field {
        Field::Num(r.clone())
    }

    pub fn opt(r: &Option<Rational>) -> Field {
        r.as_ref().map_or(Field::Missing, Field::num)
    }

    pub fn nums(rs: &[Rational]) -> Field {
        Field::List(rs.iter().map(Field::num).collect())
    }

    pub fn strategy(q: &MixedStrategy) -> Field {
        Field::nums(q.weights())
    }

    pub fn indices(ix: &[usize]) -> Field {
        Field::List(ix.iter().map(|&i| Field::Int(i as u64)).collect())
    }

    pub fn commitment(c: &CommitmentSet) -> Field {
        let kind = match c.kind() {
            CommitmentKind::Singleton => "singleton",
            CommitmentKind::PureSubset => "pure-subset",
            CommitmentKind::Interval { .. } => "interval",
            CommitmentKind::GeneralPolytope => "polytope",
        };
        Field::obj([
            ("kind", Field::text(kind)),
            ("set", Field::text(c.to_string())),
            ("extreme_points", Field::List(c.extreme_points().iter().map(Field::strategy).collect())),
        ])
    }

    fn is_scalar(&self) -> bool {
        !matches!(self, Field::List(_) | Field::Obj(_))
    }

    fn scalar(&self, human: bool) -> String {
        match self {
            Field::Text(s) => s.clone(),
            Field::Num(r) if human && !r.is_integer() => format!("{r} ({})", r.to_decimal_string()),
            Field::Num(r) => r.to_string(),
            Field::Int(i) => i.to_string(),
            Field::Bool(b) => b.to_string(),
            Field::Missing => if human { "undefined" } else { "" }.to_string(),
            Field::List(items) => {
                let parts: Vec<String> = items.iter().map(|f| f.scalar(false)).collect();
                if human {
                    format!("({})", parts.join(", "))
                } else {
                    parts.join(" ")
                }
            }
            Field::Obj(_) => unreachable!("objects are not scalars"),
        }
    }

    fn inline(&self) -> bool {
        match self {
            Field::List(items) => items.iter().all(|f| f.is_scalar() || matches!(f, Field::List(v) if v.iter().all(Field::is_scalar))),
            f => f.is_scalar(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Field::Text(s) => Value::String(s.clone()),
            Field::Num(r) => Value::String(r.to_string()),
            Field::Int(i) => Value::from(*i),
            Field::Bool(b) => Value::Bool(*b),
            Field::Missing => Value::Null,
            Field::List(items) => Value::Array(items.iter().map(Field::to_json).collect()),
            Field::Obj(entries) => Value::Object(entries.iter().map(|(k, v)| (k.clone(), v.to_json())).collect::<Map<_, _>>()),
        }
    }

    fn table_lines(&self, indent: usize, out: &mut String) {
        let pad = " ".repeat(indent);
        let Field::Obj(entries) = self else {
            out.push_str(&format!("{pad}{}\n", self.scalar(true)));
            return;
        };
        let width = entries.iter().filter(|(_, v)| v.inline()).map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in entries {
            match v {
                _ if v.inline() => {
                    let shown = match v {
                        Field::List(items) if items.iter().any(|f| !f.is_scalar()) => {
                            items.iter().map(|f| f.scalar(false)).map(|s| format!("({})", s.replace(' ', ", "))).collect::<Vec<_>>().join(" ")
                        }
                        _ => v.scalar(true),
                    };
                    out.push_str(&format!("{pad}{k:<width$}  {shown}\n"));
                }
                Field::List(items) => {
                    for (i, item) in items.iter().enumerate() {
                        out.push_str(&format!("{pad}{k}[{i}]\n"));
                        item.table_lines(indent + 2, out);
                    }
                }
                _ => {
                    out.push_str(&format!("{pad}{k}\n"));
                    v.table_lines(indent + 2, out);
                }
            }
        }
    }

    fn csv_rows(&self, path: &str, out: &mut Vec<(String, String)>) {
        let join = |k: &str| if path.is_empty() { k.to_string() } else { format!("{path}.{k}") };
        match self {
            Field::Obj(entries) => {
                for (k, v) in entries {
                    v.csv_rows(&join(k), out);
                }
            }
            Field::List(items) if !items.iter().all(Field::is_scalar) => {
                for (i, item) in items.iter().enumerate() {
                    item.csv_rows(&join(&i.to_string()), out);
                }
            }
            f => out.push((path.to_string(), f.scalar(false))),
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
                s.push('\n');
                s
            }
            Format::Table => {
                let mut s = String::new();
                self.table_lines(0, &mut s);
                s
            }
            Format::Csv => {
                let mut rows = Vec::new();
                self.csv_rows("", &mut rows);
                let mut s = String::from("field,value\n");
                for (k, v) in rows {
                    s.push_str(&format!("{},{}\n", csv_quote(&k), csv_quote(&v)));
                }
                s
            }
        }
    }
}

fn csv_quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ambistack::rational::rat;

    fn sample() -> Field {
        Field::obj([
            ("value", Field::num(&rat(22, 5))),
            ("gap", Field::Missing),
            ("points", Field::List(vec![Field::nums(&[rat(1, 2), rat(1, 2)])])),
            ("followers", Field::List(vec![Field::obj([("name", Field::text("F1")), ("ok", Field::Bool(true))])])),
        ])
    }

    #[test]
    fn json_keeps_order_and_fractions() {
        let s = sample().render(Format::Json);
        assert!(s.find("value").unwrap() < s.find("gap").unwrap());
        assert!(s.contains("\"22/5\""));
        assert!(s.contains("null"));
    }

    #[test]
    fn table_shows_decimals() {
        let s = sample().render(Format::Table);
        assert!(s.contains("22/5 (4.4)"), "{s}");
        assert!(s.contains("undefined"));
        assert!(s.contains("followers[0]"));
    }

    #[test]
    fn csv_flattens_paths() {
        let s = sample().render(Format::Csv);
        assert!(s.starts_with("field,value\n"));
        assert!(s.contains("value,22/5\n"));
        assert!(s.contains("points.0,1/2 1/2\n"), "{s}");
        assert!(s.contains("followers.0.name,F1\n"));
        assert_eq!(csv_quote("a,b"), "\"a,b\"");
    }
}
