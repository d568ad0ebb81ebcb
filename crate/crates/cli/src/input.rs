use std::fs;
use std::path::Path;

use discreta::{Error, GridCircuit, MetricSpace, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Either kind of document the commands accept.
pub enum Document {
    Circuit(GridCircuit),
    Space(MetricSpace),
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))
}

pub fn load_space(path: &Path, format: Format) -> Result<MetricSpace> {
    let text = read_text(path)?;
    match format {
        Format::Json => MetricSpace::from_json(&text),
        Format::Csv => space_from_csv(&text),
    }
}

pub fn load_circuit(path: &Path) -> Result<GridCircuit> {
    GridCircuit::from_json(&read_text(path)?)
}

/// A JSON array is a circuit, a JSON object a metric space; CSV is always a space.
pub fn load_any(path: &Path, format: Format) -> Result<Document> {
    if format == Format::Csv {
        return load_space(path, format).map(Document::Space);
    }
    let text = read_text(path)?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Error::Malformed(e.to_string()))?;
    match value {
        serde_json::Value::Array(_) => GridCircuit::from_json(&text).map(Document::Circuit),
        serde_json::Value::Object(_) => MetricSpace::from_json(&text).map(Document::Space),
        _ => Err(Error::Malformed("expected a JSON array (circuit) or object (metric space)".into())),
    }
}

/// Distance matrix in CSV. A first row that does not parse as numbers is taken
/// as the point identifiers; otherwise points are named by zero-padded index.
pub fn space_from_csv(text: &str) -> Result<MetricSpace> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows: Vec<Vec<String>> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Malformed(format!("csv: {e}")))?;
        rows.push(record.iter().map(str::to_owned).collect());
    }
    if rows.is_empty() {
        return Err(Error::Malformed("csv: no rows".into()));
    }
    let header = rows[0].iter().any(|f| f.parse::<f64>().is_err());
    let ids: Vec<String> = if header {
        rows.remove(0)
    } else {
        let width = rows.len().to_string().len();
        (0..rows.len()).map(|i| format!("p{i:0width$}")).collect()
    };
    let matrix = rows
        .iter()
        .enumerate()
        .map(|(r, row)| {
            row.iter()
                .map(|f| {
                    f.parse::<f64>()
                        .map_err(|_| Error::Malformed(format!("csv row {r}: {f:?} is not a number")))
                })
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    MetricSpace::from_matrix(ids, matrix)
}
