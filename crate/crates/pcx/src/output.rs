use std::fmt::Write as _;

use serde::Serialize;

use crate::config::Format;

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(x) => sig10(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Cell::Num(x) if x.is_finite() => serde_json::Value::from(sig10(*x).parse::<f64>().unwrap_or(*x)),
            Cell::Num(_) => serde_json::Value::Null,
            Cell::Int(n) => serde_json::Value::from(*n),
            Cell::Text(s) => serde_json::Value::from(s.as_str()),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<u64> for Cell {
    fn from(n: u64) -> Self {
        Cell::Int(n)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

/// A result table plus free-form notes that end up in the footer.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub notes: Vec<String>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table { columns: columns.to_vec(), ..Default::default() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| *c == name)
    }
}

/// Ten significant digits, fixed notation for moderate magnitudes and
/// trailing zeros trimmed.
pub fn sig10(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    let e = x.abs().log10().floor() as i32;
    let s = if (-5..10).contains(&e) {
        let mut s = format!("{:.*}", (9 - e).max(0) as usize, x);
        if s.contains('.') {
            s.truncate(s.trim_end_matches('0').trim_end_matches('.').len());
        }
        s
    } else {
        format!("{x:.9e}")
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

#[derive(Serialize)]
struct JsonDoc<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    config: &'a str,
    columns: &'a [&'static str],
    rows: Vec<Vec<serde_json::Value>>,
    notes: &'a [String],
}

pub fn render(table: &Table, format: Format, command: &str, config: &str) -> String {
    let footer = {
        let mut f = format!("# pcx {}\n# command: {command}\n# config: {config}\n", env!("CARGO_PKG_VERSION"));
        for n in &table.notes {
            let _ = writeln!(f, "# {n}");
        }
        f
    };
    match format {
        Format::Csv => {
            let mut s = table.columns.join(",");
            s.push('\n');
            for row in &table.rows {
                let cells: Vec<String> = row.iter().map(Cell::render).collect();
                s.push_str(&cells.join(","));
                s.push('\n');
            }
            s + &footer
        }
        Format::Table => {
            let cells: Vec<Vec<String>> = table.rows.iter().map(|r| r.iter().map(Cell::render).collect()).collect();
            let widths: Vec<usize> = (0..table.columns.len())
                .map(|j| cells.iter().map(|r| r[j].chars().count()).chain([table.columns[j].len()]).max().unwrap_or(0))
                .collect();
            let line = |items: &mut dyn Iterator<Item = &str>| {
                let padded: Vec<String> = items.zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
                padded.join("  ").trim_end().to_string() + "\n"
            };
            let mut s = line(&mut table.columns.iter().copied());
            for r in &cells {
                s.push_str(&line(&mut r.iter().map(String::as_str)));
            }
            s + &footer
        }
        Format::Json => {
            let doc = JsonDoc {
                tool: "pcx",
                version: env!("CARGO_PKG_VERSION"),
                command,
                config,
                columns: &table.columns,
                rows: table.rows.iter().map(|r| r.iter().map(Cell::json).collect()).collect(),
                notes: &table.notes,
            };
            serde_json::to_string_pretty(&doc).expect("table serialises") + "\n"
        }
    }
}

/// A gnuplot script plotting `series` (column names) against column `x`
/// of the CSV at `data`.
pub fn gnuplot_script(table: &Table, data: &str, x: &str, series: &[&str], title: &str) -> String {
    let col = |name: &str| table.column(name).map(|i| i + 1).unwrap_or(1);
    let mut s = String::new();
    let _ = writeln!(s, "set datafile separator ','");
    let _ = writeln!(s, "set datafile commentschars '#'");
    let _ = writeln!(s, "set key autotitle columnhead left top");
    let _ = writeln!(s, "set title '{title}'");
    let _ = writeln!(s, "set xlabel '{x}'");
    let _ = writeln!(s, "set grid");
    let plots: Vec<String> = series
        .iter()
        .map(|name| format!("'{data}' using {}:{} with lines title '{name}'", col(x), col(name)))
        .collect();
    let _ = writeln!(s, "plot {}", plots.join(", \\\n     "));
    s
}
