//! CSV and text serialization of run artifacts.
//!
//! All writers emit floats in shortest round-trip representation and iterate
//! in index order, so identical inputs produce byte-identical files.

use std::io::{BufRead, BufReader, Read, Write};

use crate::error::{Error, Result};
use crate::landscape::MuFPoint;
use crate::metrics::OutcomeDistribution;
use crate::objective::{Graph, ObjectiveTable};
use crate::search::RoundRecord;
use crate::statevector::StateVector;

/// `records.csv`: one row per recorded round.
pub fn write_records_csv<W: Write>(w: W, records: &[RoundRecord]) -> Result<()> {
    let mut csv = csv::Writer::from_writer(w);
    for r in records {
        csv.serialize(r)?;
    }
    csv.flush()?;
    Ok(())
}

/// `distribution.csv`: `z_decimal, probability` for every string.
pub fn write_distribution_csv<W: Write>(w: W, dist: &OutcomeDistribution) -> Result<()> {
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record(["z_decimal", "probability"])?;
    for (z, p) in dist.probabilities.iter().enumerate() {
        csv.write_record([z.to_string(), p.to_string()])?;
    }
    csv.flush()?;
    Ok(())
}

/// `mu_f.csv`: `z_decimal, f, mu, mu_tilde, eps_bound` per diagram point.
pub fn write_mu_f_csv<W: Write>(w: W, points: &[MuFPoint]) -> Result<()> {
    let mut csv = csv::Writer::from_writer(w);
    for p in points {
        csv.serialize(p)?;
    }
    csv.flush()?;
    Ok(())
}

/// Debug dump of a statevector: `index, real, imag`.
pub fn write_state_csv<W: Write>(w: W, state: &StateVector) -> Result<()> {
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record(["index", "real", "imag"])?;
    for (z, a) in state.amplitudes().iter().enumerate() {
        csv.write_record([z.to_string(), a.re.to_string(), a.im.to_string()])?;
    }
    csv.flush()?;
    Ok(())
}

/// Objective table format: a `n_bits,kind,seed` header row followed by the
/// `2^N` values in index order, one per row.
pub fn write_table_csv<W: Write>(
    w: W,
    table: &ObjectiveTable,
    kind: &str,
    seed: u64,
) -> Result<()> {
    let mut csv = csv::WriterBuilder::new().flexible(true).from_writer(w);
    csv.write_record(["n_bits", "kind", "seed"])?;
    csv.write_record([table.n_bits().to_string(), kind.to_string(), seed.to_string()])?;
    for v in table.values() {
        csv.write_record([v.to_string()])?;
    }
    csv.flush()?;
    Ok(())
}

/// Read a table written by [`write_table_csv`], returning the table and its
/// `(kind, seed)` metadata.
pub fn read_table_csv<R: Read>(r: R) -> Result<(ObjectiveTable, String, u64)> {
    let mut csv = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(r);
    let mut iter = csv.records();
    let meta = iter
        .next()
        .ok_or_else(|| Error::Parse("missing metadata row".into()))??;
    if meta.len() < 3 {
        return Err(Error::Parse("metadata row needs n_bits,kind,seed".into()));
    }
    let n_bits: u8 = meta[0]
        .parse()
        .map_err(|e| Error::Parse(format!("bad n_bits: {e}")))?;
    let kind = meta[1].to_string();
    let seed: u64 = meta[2]
        .parse()
        .map_err(|e| Error::Parse(format!("bad seed: {e}")))?;
    let mut values = Vec::with_capacity(1usize << n_bits);
    for rec in iter {
        let rec = rec?;
        values.push(
            rec[0]
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("bad value: {e}")))?,
        );
    }
    Ok((ObjectiveTable::from_values(n_bits, values)?, kind, seed))
}

/// Edge-list text: one `i j` pair per line.
pub fn write_graph_text<W: Write>(mut w: W, graph: &Graph) -> Result<()> {
    for (a, b) in graph.edges() {
        writeln!(w, "{a} {b}")?;
    }
    Ok(())
}

/// Read an edge list; the vertex count is inferred as `max endpoint + 1`
/// unless given explicitly.
pub fn read_graph_text<R: Read>(r: R, n_vertices: Option<usize>) -> Result<Graph> {
    let mut edges = Vec::new();
    for line in BufReader::new(r).lines() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let a: u32 = it
            .next()
            .ok_or_else(|| Error::Parse("missing endpoint".into()))?
            .parse()
            .map_err(|e| Error::Parse(format!("bad endpoint: {e}")))?;
        let b: u32 = it
            .next()
            .ok_or_else(|| Error::Parse("missing endpoint".into()))?
            .parse()
            .map_err(|e| Error::Parse(format!("bad endpoint: {e}")))?;
        edges.push((a, b));
    }
    let n = n_vertices.unwrap_or_else(|| {
        edges
            .iter()
            .map(|&(a, b)| a.max(b) as usize + 1)
            .max()
            .unwrap_or(0)
    });
    Graph::new(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objective::{gen_random_graph, gen_uniform};

    #[test]
    fn table_round_trip() {
        let t = gen_uniform(5, 77, -1.0, 1.0).unwrap();
        let mut buf = Vec::new();
        write_table_csv(&mut buf, &t, "uniform", 77).unwrap();
        let (back, kind, seed) = read_table_csv(buf.as_slice()).unwrap();
        assert_eq!(kind, "uniform");
        assert_eq!(seed, 77);
        assert_eq!(back.values(), t.values());
        assert_eq!(back.f_min(), t.f_min());
    }

    #[test]
    fn graph_round_trip() {
        let g = gen_random_graph(9, 0.5, 3).unwrap();
        let mut buf = Vec::new();
        write_graph_text(&mut buf, &g).unwrap();
        let back = read_graph_text(buf.as_slice(), Some(9)).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn graph_infers_vertex_count() {
        let text = "0 1\n1 2\n";
        let g = read_graph_text(text.as_bytes(), None).unwrap();
        assert_eq!(g.n_vertices(), 3);
        assert_eq!(g.edges().len(), 2);
    }

    #[test]
    fn records_header_and_rows() {
        let rec = RoundRecord {
            p: 1,
            beta: 0.1,
            gamma: -0.05,
            f_value: -0.25,
            success_prob: 0.5,
            approx_ratio_raw: None,
            approx_ratio_norm: 0.75,
            grad_b_mag: 1e-3,
        };
        let mut buf = Vec::new();
        write_records_csv(&mut buf, &[rec]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "p,beta,gamma,f_value,success_prob,approx_ratio_raw,approx_ratio_norm,grad_b_mag"
        );
        assert_eq!(lines.next().unwrap(), "1,0.1,-0.05,-0.25,0.5,,0.75,0.001");
    }

    #[test]
    fn repeated_writes_are_byte_identical() {
        let t = gen_uniform(6, 5, -1.0, 1.0).unwrap();
        let mut a = Vec::new();
        let mut b = Vec::new();
        write_table_csv(&mut a, &t, "uniform", 5).unwrap();
        write_table_csv(&mut b, &t, "uniform", 5).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn distribution_rows_sum_check() {
        let s = StateVector::plus_state(3).unwrap();
        let d = crate::metrics::outcome_distribution(&s);
        let mut buf = Vec::new();
        write_distribution_csv(&mut buf, &d).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 9);
    }

    #[test]
    fn state_dump_shape() {
        let s = StateVector::plus_state(2).unwrap();
        let mut buf = Vec::new();
        write_state_csv(&mut buf, &s).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 5);
        assert!(text.starts_with("index,real,imag"));
    }
}
