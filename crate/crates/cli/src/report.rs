use std::fmt::{Display, Write as _};

/// Line-oriented `key=value` output preceded by `#` header lines.
#[derive(Default)]
pub struct Record {
    header: Vec<String>,
    fields: Vec<(String, String)>,
}

impl Record {
    pub fn new(command: &str) -> Self {
        let mut r = Record::default();
        r.comment(format!("tc-graphs {command}"));
        r
    }

    pub fn comment(&mut self, text: impl Into<String>) {
        self.header.push(text.into());
    }

    pub fn set(&mut self, key: impl Into<String>, value: impl Display) {
        self.fields.push((key.into(), value.to_string()));
    }

    pub fn list<T: Display>(&mut self, key: impl Into<String>, values: &[T]) {
        let joined = values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
        self.set(key, joined);
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for h in &self.header {
            let _ = writeln!(out, "# {h}");
        }
        for (k, v) in &self.fields {
            let _ = writeln!(out, "{k}={v}");
        }
        out
    }
}
