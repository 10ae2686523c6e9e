use std::fmt::Write as _;

use recmat::Error;

/// One comparison in a run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Item {
    pub input: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl Item {
    pub fn new(input: impl Into<String>, expected: impl Into<String>, computed: impl Into<String>, pass: bool) -> Self {
        Item {
            input: input.into(),
            expected: expected.into(),
            computed: computed.into(),
            pass,
        }
    }

    /// An item whose verdict is string equality of the two values.
    pub fn compare(input: impl Into<String>, expected: impl ToString, computed: impl ToString) -> Self {
        let (e, c) = (expected.to_string(), computed.to_string());
        let pass = e == c;
        Item::new(input, e, c, pass)
    }
}

/// Result of one command.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RunReport {
    pub command: String,
    pub items: Vec<Item>,
    pub certificates: Vec<String>,
    pub notes: Vec<String>,
    pub wall_ms: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Kv,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        RunReport {
            command: command.into(),
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.pass)
    }

    pub fn first_failure(&self) -> Option<&Item> {
        self.items.iter().find(|i| !i.pass)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Kv => self.to_kv(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "$ {}", self.command);
        let w = self.items.iter().map(|i| i.input.len()).max().unwrap_or(0);
        for i in &self.items {
            let mark = if i.pass { "ok  " } else { "FAIL" };
            if i.expected.is_empty() {
                let _ = writeln!(s, "{mark} {:<w$}  {}", i.input, i.computed);
            } else {
                let _ = writeln!(
                    s,
                    "{mark} {:<w$}  expected {}  computed {}",
                    i.input, i.expected, i.computed
                );
            }
        }
        for c in &self.certificates {
            let _ = writeln!(s, "certificate: {c}");
        }
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        let passed = self.items.iter().filter(|i| i.pass).count();
        let _ = writeln!(
            s,
            "{passed}/{} passed in {} ms",
            self.items.len(),
            self.wall_ms
        );
        s
    }

    /// Line-oriented `key = value` tree.
    pub fn to_kv(&self) -> String {
        let mut s = String::new();
        let mut put = |k: &str, v: &str| {
            let _ = writeln!(s, "{k} = {}", escape(v));
        };
        put("command", &self.command);
        put("items", &self.items.len().to_string());
        for (n, i) in self.items.iter().enumerate() {
            put(&format!("item.{n}.input"), &i.input);
            put(&format!("item.{n}.expected"), &i.expected);
            put(&format!("item.{n}.computed"), &i.computed);
            put(&format!("item.{n}.pass"), if i.pass { "true" } else { "false" });
        }
        for (n, c) in self.certificates.iter().enumerate() {
            put(&format!("certificate.{n}"), c);
        }
        for (n, c) in self.notes.iter().enumerate() {
            put(&format!("note.{n}"), c);
        }
        put("passed", if self.passed() { "true" } else { "false" });
        put("wall_ms", &self.wall_ms.to_string());
        s
    }

    pub fn from_kv(text: &str) -> Result<Self, Error> {
        let bad = |m: String| Error::Format(m);
        let mut r = RunReport::default();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let (k, v) = line
                .split_once(" = ")
                .ok_or_else(|| bad(format!("expected `key = value`: {line}")))?;
            let v = unescape(v);
            let parts: Vec<&str> = k.split('.').collect();
            match parts.as_slice() {
                ["command"] => r.command = v,
                ["wall_ms"] => r.wall_ms = v.parse().map_err(|_| bad(format!("wall_ms: {v}")))?,
                ["items"] | ["passed"] => {}
                ["item", n, field] => {
                    let n: usize = n.parse().map_err(|_| bad(format!("item index {n}")))?;
                    if r.items.len() <= n {
                        r.items.resize(n + 1, Item::new("", "", "", false));
                    }
                    let item = &mut r.items[n];
                    match *field {
                        "input" => item.input = v,
                        "expected" => item.expected = v,
                        "computed" => item.computed = v,
                        "pass" => item.pass = v == "true",
                        other => return Err(bad(format!("unknown item field {other}"))),
                    }
                }
                ["certificate", _] => r.certificates.push(v),
                ["note", _] => r.notes.push(v),
                _ => return Err(bad(format!("unknown key {k}"))),
            }
        }
        Ok(r)
    }
}

fn escape(v: &str) -> String {
    v.replace('\\', "\\\\").replace('\n', "\\n")
}

fn unescape(v: &str) -> String {
    let mut out = String::with_capacity(v.len());
    let mut chars = v.chars();
    while let Some(c) = chars.next() {
        if c == '\\' {
            match chars.next() {
                Some('n') => out.push('\n'),
                Some(o) => out.push(o),
                None => out.push('\\'),
            }
        } else {
            out.push(c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kv_round_trip() {
        let mut r = RunReport::new("verify mod2 --max-n 2");
        r.items.push(Item::compare("n=1", "-1", "-1"));
        r.items.push(Item::compare("n=2", "-1", "1"));
        r.items.push(Item::new("window", "", "[1 0]\n[1 1]", true));
        r.certificates.push("A - L*D*L^t = 0 (closure dim 3, depth 2)".into());
        r.notes.push("a = b \\ c".into());
        r.wall_ms = 7;
        let back = RunReport::from_kv(&r.to_kv()).unwrap();
        assert_eq!(back, r);
        assert!(!back.passed());
        assert_eq!(back.first_failure().unwrap().input, "n=2");
    }

    #[test]
    fn text_summary() {
        let mut r = RunReport::new("det mod2 4 formula");
        r.items.push(Item::compare("formula", "1", "1"));
        assert!(r.to_text().ends_with("1/1 passed in 0 ms\n"));
    }
}
