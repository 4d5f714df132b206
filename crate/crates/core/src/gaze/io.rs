//! Readers and writers for the study's file formats.
//!
//! - gaze stream CSV: `participant_id,screen_id,t_ms,x_px,y_px,valid`
//! - headline corpus CSV: `headline_id,text,label,word_count`
//! - participants CSV: `participant_id,gender`
//! - layout JSON: `{"screens": [{"screen_id", "aois": [{"headline_id", "position", "rect": [x0,y0,x1,y1]}]}]}`
//! - fixation CSV: `participant_id,screen_id,start_ms,end_ms,duration_ms,centroid_x,centroid_y,n_samples`
//! - measures CSV: see [`MEASURE_HEADER`]

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gaze::types::{
    AoiPosition, Corpus, Fixation, GazeSample, Gender, Headline, Label, LayoutSet, MeasureRecord,
};

pub const GAZE_HEADER: [&str; 6] = ["participant_id", "screen_id", "t_ms", "x_px", "y_px", "valid"];
pub const CORPUS_HEADER: [&str; 4] = ["headline_id", "text", "label", "word_count"];
pub const PARTICIPANT_HEADER: [&str; 2] = ["participant_id", "gender"];
pub const FIXATION_HEADER: [&str; 8] = [
    "participant_id",
    "screen_id",
    "start_ms",
    "end_ms",
    "duration_ms",
    "centroid_x",
    "centroid_y",
    "n_samples",
];
pub const MEASURE_HEADER: [&str; 11] = [
    "participant_id",
    "headline_id",
    "position",
    "gender",
    "label",
    "length_norm",
    "total_gaze_duration",
    "total_fixation_duration",
    "total_fixation_count",
    "average_fixation_duration",
    "first_fixation_duration",
];

pub fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::io(path, e))
}

pub fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::io(path, e))
}

/// Iterates CSV records after checking the header, handing each record
/// and its 1-based line number to `f`.
fn parse_csv<R: Read, T>(
    reader: R,
    file: &str,
    header: &[&str],
    mut f: impl FnMut(&csv::StringRecord) -> std::result::Result<T, String>,
) -> Result<Vec<T>> {
    let perr = |line: u64, msg: String| Error::Parse {
        file: file.to_string(),
        line,
        msg,
    };
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let found = rdr
        .headers()
        .map_err(|e| perr(1, e.to_string()))?
        .clone();
    if found.len() != header.len() || found.iter().zip(header).any(|(a, b)| a != *b) {
        // An empty file has no header at all; accept it as zero rows.
        if found.is_empty() {
            return Ok(Vec::new());
        }
        return Err(perr(1, format!("expected header {:?}, found {:?}", header.join(","), found.iter().collect::<Vec<_>>().join(","))));
    }
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            perr(line, e.to_string())
        })?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != header.len() {
            return Err(perr(line, format!("expected {} fields, found {}", header.len(), rec.len())));
        }
        out.push(f(&rec).map_err(|m| perr(line, m))?);
    }
    Ok(out)
}

fn field<T: FromStr>(rec: &csv::StringRecord, idx: usize, name: &str) -> std::result::Result<T, String>
where
    T::Err: std::fmt::Display,
{
    let raw = &rec[idx];
    raw.parse::<T>()
        .map_err(|e| format!("bad {name} {raw:?}: {e}"))
}

fn finite(rec: &csv::StringRecord, idx: usize, name: &str) -> std::result::Result<f64, String> {
    let v: f64 = field(rec, idx, name)?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{name} must be finite, got {v}"))
    }
}

fn parse_bool(raw: &str) -> std::result::Result<bool, String> {
    match raw.to_ascii_lowercase().as_str() {
        "1" | "true" => Ok(true),
        "0" | "false" => Ok(false),
        other => Err(format!("bad valid flag {other:?}")),
    }
}

pub(crate) fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w)
}

pub(crate) fn write_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io("<output>", io),
        other => Error::Numerical(format!("CSV write failed: {other:?}")),
    }
}

pub fn read_gaze_csv<R: Read>(reader: R, file: &str) -> Result<Vec<GazeSample>> {
    parse_csv(reader, file, &GAZE_HEADER, |r| {
        Ok(GazeSample {
            participant_id: r[0].to_string(),
            screen_id: r[1].to_string(),
            t_ms: finite(r, 2, "t_ms")?,
            x: finite(r, 3, "x_px")?,
            y: finite(r, 4, "y_px")?,
            valid: parse_bool(&r[5])?,
        })
    })
}

pub fn write_gaze_csv<W: Write>(w: W, samples: &[GazeSample]) -> Result<()> {
    let mut wr = csv_writer(w);
    wr.write_record(GAZE_HEADER).map_err(write_err)?;
    for s in samples {
        wr.write_record([
            s.participant_id.as_str(),
            s.screen_id.as_str(),
            &s.t_ms.to_string(),
            &s.x.to_string(),
            &s.y.to_string(),
            if s.valid { "1" } else { "0" },
        ])
        .map_err(write_err)?;
    }
    wr.flush().map_err(|e| Error::io("<output>", e))
}

/// Reads a headline corpus and computes normalized lengths.
pub fn read_corpus_csv<R: Read>(reader: R, file: &str) -> Result<Corpus> {
    let headlines = parse_csv(reader, file, &CORPUS_HEADER, |r| {
        Ok(Headline {
            headline_id: r[0].to_string(),
            text: r[1].to_string(),
            label: field::<Label>(r, 2, "label")?,
            word_count: field(r, 3, "word_count")?,
            length_norm: 0.0,
        })
    })?;
    Corpus::new(headlines)
}

pub fn write_corpus_csv<W: Write>(w: W, corpus: &Corpus) -> Result<()> {
    let mut wr = csv_writer(w);
    wr.write_record(CORPUS_HEADER).map_err(write_err)?;
    for h in &corpus.headlines {
        wr.write_record([
            h.headline_id.as_str(),
            h.text.as_str(),
            h.label.as_str(),
            &h.word_count.to_string(),
        ])
        .map_err(write_err)?;
    }
    wr.flush().map_err(|e| Error::io("<output>", e))
}

pub fn read_participants_csv<R: Read>(reader: R, file: &str) -> Result<Vec<(String, Gender)>> {
    parse_csv(reader, file, &PARTICIPANT_HEADER, |r| {
        Ok((r[0].to_string(), field::<Gender>(r, 1, "gender")?))
    })
}

pub fn write_participants_csv<W: Write>(w: W, participants: &[(String, Gender)]) -> Result<()> {
    let mut wr = csv_writer(w);
    wr.write_record(PARTICIPANT_HEADER).map_err(write_err)?;
    for (id, g) in participants {
        wr.write_record([id.as_str(), g.as_str()]).map_err(write_err)?;
    }
    wr.flush().map_err(|e| Error::io("<output>", e))
}

pub fn read_layout_json<R: Read>(reader: R, file: &str) -> Result<LayoutSet> {
    serde_json::from_reader(reader).map_err(|e| Error::Parse {
        file: file.to_string(),
        line: e.line() as u64,
        msg: e.to_string(),
    })
}

pub fn write_layout_json<W: Write>(mut w: W, layouts: &LayoutSet) -> Result<()> {
    serde_json::to_writer_pretty(&mut w, layouts)
        .map_err(|e| Error::Numerical(format!("layout serialization failed: {e}")))?;
    writeln!(w).map_err(|e| Error::io("<output>", e))?;
    w.flush().map_err(|e| Error::io("<output>", e))
}

pub fn write_fixations_csv<'a, W: Write>(
    w: W,
    rows: impl IntoIterator<Item = (&'a str, &'a str, &'a Fixation)>,
) -> Result<()> {
    let mut wr = csv_writer(w);
    wr.write_record(FIXATION_HEADER).map_err(write_err)?;
    for (pid, sid, f) in rows {
        wr.write_record([
            pid,
            sid,
            &f.start_ms.to_string(),
            &f.end_ms.to_string(),
            &f.duration_ms.to_string(),
            &f.centroid_x.to_string(),
            &f.centroid_y.to_string(),
            &f.n_samples.to_string(),
        ])
        .map_err(write_err)?;
    }
    wr.flush().map_err(|e| Error::io("<output>", e))
}

pub fn read_measures_csv<R: Read>(reader: R, file: &str) -> Result<Vec<MeasureRecord>> {
    parse_csv(reader, file, &MEASURE_HEADER, |r| {
        Ok(MeasureRecord {
            participant_id: r[0].to_string(),
            headline_id: r[1].to_string(),
            position: field::<AoiPosition>(r, 2, "position")?,
            gender: field::<Gender>(r, 3, "gender")?,
            label: field::<Label>(r, 4, "label")?,
            length_norm: finite(r, 5, "length_norm")?,
            total_gaze_duration: finite(r, 6, "total_gaze_duration")?,
            total_fixation_duration: finite(r, 7, "total_fixation_duration")?,
            total_fixation_count: finite(r, 8, "total_fixation_count")?,
            average_fixation_duration: finite(r, 9, "average_fixation_duration")?,
            first_fixation_duration: finite(r, 10, "first_fixation_duration")?,
        })
    })
}

pub fn write_measures_csv<W: Write>(w: W, records: &[MeasureRecord]) -> Result<()> {
    let mut wr = csv_writer(w);
    wr.write_record(MEASURE_HEADER).map_err(write_err)?;
    for m in records {
        wr.write_record([
            m.participant_id.as_str(),
            m.headline_id.as_str(),
            m.position.as_str(),
            m.gender.as_str(),
            m.label.as_str(),
            &m.length_norm.to_string(),
            &m.total_gaze_duration.to_string(),
            &m.total_fixation_duration.to_string(),
            &m.total_fixation_count.to_string(),
            &m.average_fixation_duration.to_string(),
            &m.first_fixation_duration.to_string(),
        ])
        .map_err(write_err)?;
    }
    wr.flush().map_err(|e| Error::io("<output>", e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaze_rows_parse() {
        let data = "participant_id,screen_id,t_ms,x_px,y_px,valid\np01,s01,0,10.5,20,1\np01,s01,33.3,11,21,false\n";
        let s = read_gaze_csv(data.as_bytes(), "gaze.csv").unwrap();
        assert_eq!(s.len(), 2);
        assert!(s[0].valid && !s[1].valid);
        assert_eq!(s[1].t_ms, 33.3);
    }

    #[test]
    fn malformed_row_names_line() {
        let data = "participant_id,screen_id,t_ms,x_px,y_px,valid\np01,s01,0,10,20,1\np01,s01,abc,11,21,1\n";
        match read_gaze_csv(data.as_bytes(), "gaze.csv") {
            Err(Error::Parse { line, file, .. }) => {
                assert_eq!(line, 3);
                assert_eq!(file, "gaze.csv");
            }
            other => panic!("unexpected {other:?}"),
        }
        let short = "participant_id,screen_id,t_ms,x_px,y_px,valid\np01,s01,0,10\n";
        assert!(matches!(read_gaze_csv(short.as_bytes(), "g"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn header_only_and_empty_files() {
        let data = "participant_id,screen_id,t_ms,x_px,y_px,valid\n";
        assert!(read_gaze_csv(data.as_bytes(), "g").unwrap().is_empty());
        assert!(read_gaze_csv("".as_bytes(), "g").unwrap().is_empty());
        assert!(read_gaze_csv("a,b\n".as_bytes(), "g").is_err());
    }

    #[test]
    fn measures_round_trip() {
        let rec = MeasureRecord {
            participant_id: "p,1".into(),
            headline_id: "h1".into(),
            position: AoiPosition::Bottom,
            gender: Gender::Female,
            label: Label::FalseNews,
            length_norm: -0.123_456_789_012_345_6,
            total_gaze_duration: 1234.5,
            total_fixation_duration: 1000.0,
            total_fixation_count: 4.0,
            average_fixation_duration: 250.0,
            first_fixation_duration: 199.999_999_999_9,
        };
        let mut buf = Vec::new();
        write_measures_csv(&mut buf, std::slice::from_ref(&rec)).unwrap();
        let back = read_measures_csv(buf.as_slice(), "m").unwrap();
        assert_eq!(back, vec![rec]);
    }

    #[test]
    fn layout_json_validates() {
        let ok = r#"{"screens":[{"screen_id":"s1","aois":[
            {"headline_id":"a","position":"bottom","rect":[0,900,100,1000]},
            {"headline_id":"b","position":"top","rect":[0,0,100,100]},
            {"headline_id":"c","position":"middle","rect":[0,400,100,500]}]}]}"#;
        let set = read_layout_json(ok.as_bytes(), "l.json").unwrap();
        assert_eq!(set.screens[0].aois[0].headline_id, "b");
        let bad = ok.replace("\"bottom\"", "\"top\"");
        assert!(read_layout_json(bad.as_bytes(), "l.json").is_err());
    }
}
