use std::path::{Path, PathBuf};

use super::{ExperimentResult, RunRecord};
use crate::bits::Bitstring;
use crate::error::{Error, Result};

fn write_csv(rows: Vec<Vec<String>>, header: &[&str]) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii csv")
}

fn prob(p: f64) -> String {
    format!("{p:.10}")
}

/// `iterations,dd,success_prob,ci_low,ci_high,twoq_count,total_duration_s`.
pub fn results_csv(res: &ExperimentResult) -> String {
    let rows = res
        .records
        .iter()
        .map(|r| {
            vec![
                r.iterations.to_string(),
                r.dd.clone(),
                prob(r.success_prob),
                prob(r.ci_low),
                prob(r.ci_high),
                r.twoq_count.to_string(),
                r.total_duration.to_string(),
            ]
        })
        .collect();
    write_csv(rows, &["iterations", "dd", "success_prob", "ci_low", "ci_high", "twoq_count", "total_duration_s"])
}

/// `bitstring,count,probability`, one row per outcome in index order.
pub fn histogram_csv(r: &RunRecord, n_qubits: usize) -> String {
    let rows = r
        .counts
        .iter()
        .zip(r.distribution.probabilities())
        .enumerate()
        .map(|(i, (c, p))| vec![Bitstring::from_index(i, n_qubits).to_string(), c.to_string(), prob(*p)])
        .collect();
    write_csv(rows, &["bitstring", "count", "probability"])
}

/// `qubit,busy_fraction,inserted_sequences`.
pub fn metrics_csv(r: &RunRecord) -> String {
    let rows = r
        .busy_fraction
        .iter()
        .zip(&r.inserted_sequences)
        .enumerate()
        .map(|(q, (b, s))| vec![q.to_string(), format!("{b:.6}"), s.to_string()])
        .collect();
    write_csv(rows, &["qubit", "busy_fraction", "inserted_sequences"])
}

/// Writes `results.csv` plus `hist_k{k}_{dd}.csv` and `metrics_k{k}_{dd}.csv`
/// per record into `dir`, creating it if needed. Returns the files written.
pub fn emit_results(res: &ExperimentResult, dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut files = vec![(dir.join("results.csv"), results_csv(res))];
    for r in &res.records {
        let stem = format!("k{}_{}", r.iterations, r.dd.to_ascii_lowercase());
        files.push((dir.join(format!("hist_{stem}.csv")), histogram_csv(r, res.n_qubits())));
        files.push((dir.join(format!("metrics_{stem}.csv")), metrics_csv(r)));
    }
    for (path, text) in &files {
        std::fs::write(path, text).map_err(|e| Error::io(path, e))?;
    }
    Ok(files.into_iter().map(|(p, _)| p).collect())
}
