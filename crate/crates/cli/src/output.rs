//! Reports as ordered key/value lines. Machine output is `key: value`, the
//! grammar of the period file; text output aligns keys for reading.

use clap::ValueEnum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Text,
    Machine,
}

#[derive(Default)]
pub struct Report {
    lines: Vec<(String, String)>,
    notes: Vec<String>,
}

impl Report {
    pub fn kv(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.lines.push((key.into(), value.to_string()));
        self
    }

    /// Advisory text, shown in text mode and as `# ` comments in machine mode.
    pub fn note(&mut self, s: impl Into<String>) -> &mut Self {
        self.notes.push(s.into());
        self
    }

    pub fn render(&self, mode: Mode) -> String {
        let mut out = String::new();
        match mode {
            Mode::Machine => {
                for (k, v) in &self.lines {
                    out.push_str(&format!("{k}: {v}\n"));
                }
                for n in &self.notes {
                    out.push_str(&format!("# {n}\n"));
                }
            }
            Mode::Text => {
                let w = self.lines.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (k, v) in &self.lines {
                    out.push_str(&format!("{k:<w$}  {v}\n"));
                }
                for n in &self.notes {
                    out.push_str(&format!("note: {n}\n"));
                }
            }
        }
        out
    }
}
