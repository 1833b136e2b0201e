//! CSV and JSON writers.
//!
//! CSV starts with `# fqx <kind> v<VERSION>`, then `# key: value` metadata
//! lines, then the header row. Rows are flushed as they arrive. JSON is a
//! single document written when the run ends.

use std::io::{self, Write};

use serde_json::{json, Map, Value};

use crate::config::Kind;
use crate::experiments::Cell;

/// Version of the column layouts.
pub const VERSION: u32 = 1;

pub trait Sink {
    fn row(&mut self, row: Vec<Cell>) -> io::Result<()>;
    fn finish(self: Box<Self>) -> io::Result<()>;
}

pub struct CsvSink<W: Write> {
    out: csv::Writer<W>,
}

impl<W: Write> CsvSink<W> {
    pub fn new(
        mut w: W,
        kind: Kind,
        columns: &[&str],
        metadata: &[(String, String)],
    ) -> io::Result<Self> {
        writeln!(w, "# fqx {kind} v{VERSION}")?;
        for (k, v) in metadata {
            // keep every value on its own comment line
            writeln!(w, "# {k}: {}", v.replace('\n', " "))?;
        }
        let mut out = csv::Writer::from_writer(w);
        out.write_record(columns)?;
        out.flush()?;
        Ok(CsvSink { out })
    }
}

impl<W: Write> Sink for CsvSink<W> {
    fn row(&mut self, row: Vec<Cell>) -> io::Result<()> {
        self.out.write_record(row.iter().map(Cell::to_csv))?;
        self.out.flush()
    }

    fn finish(mut self: Box<Self>) -> io::Result<()> {
        self.out.flush()
    }
}

pub struct JsonSink<W: Write> {
    out: W,
    head: Map<String, Value>,
    columns: Vec<String>,
    rows: Vec<Value>,
}

impl<W: Write> JsonSink<W> {
    pub fn new(
        out: W,
        kind: Kind,
        columns: &[&str],
        metadata: &[(String, String)],
        config: Value,
    ) -> Self {
        let mut head = Map::new();
        head.insert("format".into(), json!(format!("fqx {kind} v{VERSION}")));
        let meta: Map<String, Value> = metadata
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect();
        head.insert("metadata".into(), Value::Object(meta));
        head.insert("config".into(), config);
        JsonSink {
            out,
            head,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }
}

impl<W: Write> Sink for JsonSink<W> {
    fn row(&mut self, row: Vec<Cell>) -> io::Result<()> {
        let obj: Map<String, Value> = self
            .columns
            .iter()
            .cloned()
            .zip(row.iter().map(Cell::to_json))
            .collect();
        self.rows.push(Value::Object(obj));
        Ok(())
    }

    fn finish(mut self: Box<Self>) -> io::Result<()> {
        let mut doc = std::mem::take(&mut self.head);
        doc.insert("columns".into(), json!(self.columns));
        doc.insert("rows".into(), Value::Array(std::mem::take(&mut self.rows)));
        serde_json::to_writer_pretty(&mut self.out, &Value::Object(doc))?;
        writeln!(self.out)?;
        self.out.flush()
    }
}
