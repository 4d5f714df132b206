use crate::error::{Error, Result};
use crate::gaze::io::read_corpus_csv;
use crate::gaze::{Aoi, AoiPosition, Corpus, LayoutSet, Rect, ScreenGeometry, ScreenLayout};

const FIXTURE_CSV: &str = include_str!("../../data/headlines.csv");

/// Placeholder corpus with the published set's shape: 108 headlines,
/// 72 true and 36 false, with the same word-count means.
pub fn fixture_corpus() -> Corpus {
    read_corpus_csv(FIXTURE_CSV.as_bytes(), "headlines.csv").expect("bundled corpus parses")
}

/// Headlines arranged on screens.
#[derive(Debug, Clone, PartialEq)]
pub struct StudyDesign {
    pub corpus: Corpus,
    pub layouts: LayoutSet,
}

impl StudyDesign {
    /// Every (screen, AOI) pair together with its headline index in the
    /// corpus, in screen order then top to bottom.
    pub fn placements(&self) -> Result<Vec<(&ScreenLayout, &Aoi, usize)>> {
        let mut out = Vec::new();
        for screen in &self.layouts.screens {
            for aoi in &screen.aois {
                let k = self
                    .corpus
                    .headlines
                    .iter()
                    .position(|h| h.headline_id == aoi.headline_id)
                    .ok_or_else(|| {
                        Error::Config(format!(
                            "screen {} refers to unknown headline {}",
                            screen.screen_id, aoi.headline_id
                        ))
                    })?;
                out.push((screen, aoi, k));
            }
        }
        Ok(out)
    }
}

/// Lays the corpus out as screens of two true and one false headline. The
/// false headline of screen `s` sits at position `s mod 3`, so with 36
/// screens every position carries a false headline exactly 12 times.
/// Headline lines are centred 70 mm apart with 20 mm side margins.
pub fn paper_design(corpus: &Corpus, geom: &ScreenGeometry) -> Result<StudyDesign> {
    geom.validate()?;
    let trues: Vec<&str> = corpus
        .headlines
        .iter()
        .filter(|h| h.label.is_true())
        .map(|h| h.headline_id.as_str())
        .collect();
    let falses: Vec<&str> = corpus
        .headlines
        .iter()
        .filter(|h| !h.label.is_true())
        .map(|h| h.headline_id.as_str())
        .collect();
    if falses.is_empty() || trues.len() != 2 * falses.len() {
        return Err(Error::Config(format!(
            "screens need exactly two true headlines per false one, have {} true and {} false",
            trues.len(),
            falses.len()
        )));
    }

    let spacing = geom.mm_to_px(70.0);
    let margin = geom.mm_to_px(20.0);
    let half_height = (spacing * 0.4).min(geom.height_px / 6.0);
    let centre = geom.height_px / 2.0;
    let rect = |pos: AoiPosition| {
        let cy = centre + (pos.index() as f64 - 1.0) * spacing;
        Rect {
            x0: margin,
            y0: (cy - half_height).max(0.0),
            x1: geom.width_px - margin,
            y1: (cy + half_height).min(geom.height_px),
        }
    };

    let screens = falses
        .iter()
        .enumerate()
        .map(|(s, &false_id)| {
            let false_pos = s % 3;
            let mut true_ids = [trues[2 * s], trues[2 * s + 1]].into_iter();
            let aois = AoiPosition::ALL
                .iter()
                .map(|&pos| Aoi {
                    headline_id: if pos.index() == false_pos {
                        false_id.to_string()
                    } else {
                        true_ids.next().unwrap().to_string()
                    },
                    position: pos,
                    rect: rect(pos),
                })
                .collect();
            ScreenLayout::new(format!("s{:02}", s + 1), aois)
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(StudyDesign {
        corpus: corpus.clone(),
        layouts: LayoutSet { screens },
    })
}
