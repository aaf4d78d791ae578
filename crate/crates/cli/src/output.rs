//! Table and JSON-lines rendering. Every float is written with 17
//! significant digits in Rust's locale-independent scientific notation.

use std::fmt::Write as _;

use dirac_hydro::OutputFormat;

pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Str(String),
    Num(f64),
    Int(u64),
    Bool(bool),
    Nums(Vec<f64>),
}

impl Value {
    fn table(&self) -> String {
        match self {
            Value::Str(s) => s.clone(),
            Value::Num(x) => num(*x),
            Value::Int(i) => i.to_string(),
            Value::Bool(b) => b.to_string(),
            Value::Nums(v) => v.iter().map(|x| num(*x)).collect::<Vec<_>>().join(","),
        }
    }

    fn json(&self, out: &mut String) {
        let json_num = |x: f64| if x.is_finite() { num(x) } else { "null".to_string() };
        match self {
            Value::Str(s) => json_string(s, out),
            Value::Num(x) => out.push_str(&json_num(*x)),
            Value::Int(i) => {
                let _ = write!(out, "{i}");
            }
            Value::Bool(b) => {
                let _ = write!(out, "{b}");
            }
            Value::Nums(v) => {
                out.push('[');
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push_str(&json_num(*x));
                }
                out.push(']');
            }
        }
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Str(s.to_owned())
    }
}
impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Str(s)
    }
}
impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Num(x)
    }
}
impl From<usize> for Value {
    fn from(i: usize) -> Self {
        Value::Int(i as u64)
    }
}
impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}
impl<const N: usize> From<[f64; N]> for Value {
    fn from(v: [f64; N]) -> Self {
        Value::Nums(v.to_vec())
    }
}
impl From<Vec<f64>> for Value {
    fn from(v: Vec<f64>) -> Self {
        Value::Nums(v)
    }
}

fn json_string(s: &str, out: &mut String) {
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
}

/// Ordered key/value pairs; the first field is always `kind`.
#[derive(Clone, Debug, PartialEq)]
pub struct Record(pub Vec<(&'static str, Value)>);

impl Record {
    pub fn new(kind: &str) -> Self {
        Record(vec![("kind", kind.into())])
    }

    pub fn with(mut self, key: &'static str, v: impl Into<Value>) -> Self {
        self.0.push((key, v.into()));
        self
    }

    fn kind(&self) -> &Value {
        &self.0[0].1
    }

    fn keys(&self) -> Vec<&'static str> {
        self.0.iter().map(|(k, _)| *k).collect()
    }

    pub fn to_json(&self) -> String {
        let mut out = String::from("{");
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            json_string(k, &mut out);
            out.push(':');
            v.json(&mut out);
        }
        out.push('}');
        out
    }
}

/// Renders records. In table mode consecutive records with the same keys
/// share a header; a lone record is printed as `key value` lines.
pub fn render(records: &[Record], format: OutputFormat) -> String {
    let mut out = String::new();
    if format == OutputFormat::Records {
        for r in records {
            out.push_str(&r.to_json());
            out.push('\n');
        }
        return out;
    }
    let mut i = 0;
    while i < records.len() {
        let keys = records[i].keys();
        let mut j = i + 1;
        while j < records.len() && records[j].keys() == keys && records[j].kind() == records[i].kind() {
            j += 1;
        }
        if !out.is_empty() {
            out.push('\n');
        }
        if j - i == 1 {
            let width = keys.iter().map(|k| k.len()).max().unwrap_or(0);
            for (k, v) in &records[i].0 {
                let _ = writeln!(out, "{k:<width$}  {}", v.table());
            }
        } else {
            let rows: Vec<Vec<String>> = records[i..j]
                .iter()
                .map(|r| r.0.iter().skip(1).map(|(_, v)| v.table()).collect())
                .collect();
            let header: Vec<&str> = keys[1..].to_vec();
            let widths: Vec<usize> = (0..header.len())
                .map(|c| rows.iter().map(|r| r[c].len()).chain([header[c].len()]).max().unwrap())
                .collect();
            let line = |cells: Vec<&str>| {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            let _ = writeln!(out, "# {}", records[i].kind().table());
            let _ = writeln!(out, "{}", line(header.clone()));
            for r in &rows {
                let _ = writeln!(out, "{}", line(r.iter().map(String::as_str).collect()));
            }
        }
        i = j;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(num(0.1), "1.0000000000000001e-1");
        assert_eq!(num(-2.0), "-2.0000000000000000e0");
        assert_eq!("1.0000000000000001e-1".parse::<f64>().unwrap(), 0.1);
    }

    #[test]
    fn json_escaping_and_non_finite() {
        let r = Record::new("x").with("msg", "a \"b\"\n").with("v", f64::NAN).with("w", [1.0, f64::INFINITY]);
        assert_eq!(r.to_json(), r#"{"kind":"x","msg":"a \"b\"\n","v":null,"w":[1.0000000000000000e0,null]}"#);
    }

    #[test]
    fn table_groups_rows() {
        let rs = vec![
            Record::new("row").with("a", 1usize).with("b", "x"),
            Record::new("row").with("a", 22usize).with("b", "y"),
            Record::new("summary").with("ok", true),
        ];
        let t = render(&rs, OutputFormat::Table);
        assert_eq!(t, "# row\na   b\n1   x\n22  y\n\nkind  summary\nok    true\n");
    }
}
