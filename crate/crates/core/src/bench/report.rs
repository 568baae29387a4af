//! CSV and markdown output.

use std::io::{Read, Write};

use crate::search::Counters;

use super::run::{Aggregate, BenchError, Row, RowStatus};

/// CSV column names; `wall_ms` is always last.
pub fn csv_header() -> Vec<&'static str> {
    let mut h = vec!["instance", "strategy", "rule", "status", "cost"];
    h.extend_from_slice(&Counters::NAMES);
    h.push("model_time");
    h.push("wall_ms");
    h
}

fn row_record(r: &Row) -> Vec<String> {
    let mut rec = vec![
        r.instance.to_string(),
        r.strategy.clone(),
        r.rule.clone(),
        r.status.name().to_string(),
        r.cost.map(|c| c.to_string()).unwrap_or_default(),
    ];
    rec.extend(r.counters.values().iter().map(|v| v.to_string()));
    rec.push(format!("{:.6}", r.model_time));
    rec.push(format!("{:.3}", r.wall_ms));
    rec
}

pub fn write_csv(rows: &[Row], out: impl Write) -> Result<(), BenchError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(csv_header())?;
    for r in rows {
        w.write_record(row_record(r))?;
    }
    w.flush()?;
    Ok(())
}

pub fn csv_string(rows: &[Row]) -> Result<String, BenchError> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

fn bad(message: impl Into<String>) -> BenchError {
    BenchError::Io(std::io::Error::new(std::io::ErrorKind::InvalidData, message.into()))
}

/// Reads rows back from CSV produced by [`write_csv`].
pub fn read_csv(input: impl Read) -> Result<Vec<Row>, BenchError> {
    let mut rdr = csv::Reader::from_reader(input);
    let header = rdr.headers()?.clone();
    if header.iter().collect::<Vec<_>>() != csv_header() {
        return Err(bad("unexpected CSV header"));
    }
    let num = |s: &str| s.parse::<u64>().map_err(|_| bad(format!("bad number `{s}`")));
    let float = |s: &str| s.parse::<f64>().map_err(|_| bad(format!("bad number `{s}`")));
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let f: Vec<&str> = rec.iter().collect();
        let mut v = [0u64; 18];
        for (i, slot) in v.iter_mut().enumerate() {
            *slot = num(f[5 + i])?;
        }
        let counters = Counters {
            generated: v[0],
            expanded: v[1],
            reopened: v[2],
            h1_evals: v[3],
            h2_evals: v[4],
            good1: v[5],
            good2: v[6],
            bad: v[7],
            ob_hits: v[8],
            hbp1_skips: v[9],
            hbp2_delays: v[10],
            open_pushes: v[11],
            open_pops: v[12],
            er: v[13],
            sr: v[14],
            sg: v[15],
            eb: v[16],
            goals: v[17],
        };
        rows.push(Row {
            instance: num(f[0])? as usize,
            strategy: f[1].to_string(),
            rule: f[2].to_string(),
            status: RowStatus::parse(f[3]).ok_or_else(|| bad(format!("bad status `{}`", f[3])))?,
            cost: if f[4].is_empty() { None } else { Some(num(f[4])?) },
            counters,
            model_time: float(f[23])?,
            wall_ms: float(f[24])?,
        });
    }
    Ok(rows)
}

/// Drops the trailing `wall_ms` column from every line of a CSV text.
pub fn strip_wall_column(csv_text: &str) -> String {
    csv_text
        .lines()
        .map(|l| l.rsplit_once(',').map_or(l, |(head, _)| head))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn summary_header() -> Vec<&'static str> {
    let mut h = vec!["strategy", "solved", "instances"];
    h.extend_from_slice(&Counters::NAMES);
    h.extend_from_slice(&["mean_generated", "model_time", "rel_model_time", "rel_wall"]);
    h
}

/// The aggregate block as CSV.
pub fn write_summary_csv(aggregates: &[Aggregate], out: impl Write) -> Result<(), BenchError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(summary_header())?;
    for a in aggregates {
        let mut rec = vec![a.strategy.clone(), a.solved.to_string(), a.instances.to_string()];
        rec.extend(a.totals.values().iter().map(|v| v.to_string()));
        rec.push(format!("{:.3}", a.mean_generated));
        rec.push(format!("{:.6}", a.model_time));
        rec.push(format!("{:.4}", a.relative_model_time));
        rec.push(format!("{:.4}", a.relative_wall));
        w.write_record(rec)?;
    }
    w.flush()?;
    Ok(())
}

fn markdown_table(rows: &[Vec<String>]) -> String {
    let Some(header) = rows.first() else {
        return String::new();
    };
    let mut widths: Vec<usize> = header.iter().map(|c| c.len().max(3)).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: &[String]| {
        let body: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        format!("| {} |\n", body.join(" | "))
    };
    let mut out = line(header);
    let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    out.push_str(&format!("|-{}-|\n", rule.join("-|-")));
    for r in &rows[1..] {
        out.push_str(&line(r));
    }
    out
}

/// Renders CSV text as an aligned markdown table with the same columns.
pub fn emit_markdown(csv_text: &str) -> Result<String, BenchError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .from_reader(csv_text.as_bytes());
    let mut rows = Vec::new();
    for rec in rdr.records() {
        rows.push(rec?.iter().map(String::from).collect::<Vec<_>>());
    }
    Ok(markdown_table(&rows))
}

/// Reads a table written by [`emit_markdown`] back into cells, header
/// first.
pub fn parse_markdown(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| l.starts_with('|'))
        .filter(|l| !l.trim_start_matches('|').starts_with('-'))
        .map(|l| {
            l.trim()
                .trim_start_matches('|')
                .trim_end_matches('|')
                .split('|')
                .map(|c| c.trim().to_string())
                .collect()
        })
        .collect()
}

/// Summary and rows as one markdown document.
pub fn report_markdown(rows: &[Row], aggregates: &[Aggregate], baseline: &str) -> Result<String, BenchError> {
    let mut summary = Vec::new();
    write_summary_csv(aggregates, &mut summary)?;
    let summary = String::from_utf8(summary).expect("csv output is utf-8");
    let mut out = format!("## Summary (baseline: {baseline})\n\n");
    out.push_str(&emit_markdown(&summary)?);
    out.push_str("\n## Instances\n\n");
    out.push_str(&emit_markdown(&super::report::csv_string(rows)?)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(i: usize, strategy: &str) -> Row {
        Row {
            instance: i,
            strategy: strategy.into(),
            rule: "-".into(),
            status: RowStatus::Ok,
            cost: Some(12),
            counters: Counters {
                generated: 40,
                expanded: 15,
                h2_evals: 20,
                ..Counters::default()
            },
            model_time: 213.5,
            wall_ms: 0.25,
        }
    }

    #[test]
    fn single_row_table() {
        let csv = csv_string(&[sample(0, "lazy")]).unwrap();
        let md = emit_markdown(&csv).unwrap();
        assert_eq!(md.lines().count(), 3);
        let cells = parse_markdown(&md);
        assert_eq!(cells.len(), 2);
        assert_eq!(cells[0], csv_header());
        assert_eq!(cells[1][1], "lazy");
    }

    #[test]
    fn markdown_round_trip() {
        let rows = vec![sample(0, "max"), sample(0, "lazy+ob"), sample(1, "max")];
        let csv = csv_string(&rows).unwrap();
        let md = emit_markdown(&csv).unwrap();
        let mut rdr = csv::ReaderBuilder::new().has_headers(false).from_reader(csv.as_bytes());
        let expected: Vec<Vec<String>> = rdr
            .records()
            .map(|r| r.unwrap().iter().map(String::from).collect())
            .collect();
        assert_eq!(parse_markdown(&md), expected);
    }

    #[test]
    fn csv_round_trip_and_wall_strip() {
        let mut rows = vec![sample(0, "max"), sample(1, "lazy")];
        rows[1].status = RowStatus::Limit;
        rows[1].cost = None;
        let csv = csv_string(&rows).unwrap();
        assert_eq!(read_csv(csv.as_bytes()).unwrap(), rows);
        let stripped = strip_wall_column(&csv);
        assert!(stripped.lines().next().unwrap().ends_with("model_time"));
        assert!(!stripped.contains("0.250"));
    }
}
