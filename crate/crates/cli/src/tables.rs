//! Plain-text rendering of the construction: per-cycle views of the n²
//! positions in block order and in reading order, then the interleaved
//! result. Distinguished positions carry a marker, since bold is not
//! available in plain text.

use std::collections::{BTreeMap, BTreeSet};

use cyceq_core::{Alphabet, Equalization, Letter, Word};

/// Renders block and group tables for every cycle plus the final expanded
/// words, marking distinguished positions with `marker`.
pub fn render_construction(
    alphabet: &Alphabet,
    equalization: &Equalization,
    marker: &str,
) -> String {
    let construction = &equalization.construction;
    let certificate = &equalization.certificate;
    let n = construction.n();
    let mut out = String::new();

    if n == 0 {
        out.push_str("empty words: nothing to draw\n");
        return out;
    }

    // Display names for normalized ids: the lifted letter's token, with a
    // #ordinal suffix for fresh letters.
    let fresh_names: BTreeMap<Letter, (Letter, usize)> = construction
        .lift
        .entries()
        .map(|(original, ordinal, fresh)| (fresh, (original, ordinal)))
        .collect();
    let display: Vec<String> = construction
        .letters
        .iter()
        .map(|&letter| match fresh_names.get(&letter) {
            Some(&(original, ordinal)) => {
                format!("{}#{ordinal}", alphabet.token(original).unwrap_or("?"))
            }
            None => alphabet.token(letter).unwrap_or("?").to_string(),
        })
        .collect();

    let geometry = construction.geometry;
    let size = geometry.modulus();
    let step = geometry.step();
    out.push_str(&format!(
        "n = {n}, cycles m = {}, step p = {step}, per-cycle length n^2 = {size}\n",
        construction.cycle_count()
    ));

    for (index, pair) in construction.cycle_words.iter().enumerate() {
        let cycle = &construction.permutation.cycles()[index];
        let members: Vec<String> = cycle.elements().iter().map(usize::to_string).collect();
        out.push_str(&format!("\ncycle {}: ({})\n", index + 1, members.join(" ")));
        let distinguished: BTreeSet<usize> = pair.distinguished.iter().copied().collect();

        let mark = |text: String, marked: bool| -> String {
            if marked {
                format!("{text}{marker}")
            } else {
                text
            }
        };
        let letter_cell = |word: &Word, position: usize| -> String {
            mark(
                display[word.letters()[position].id() as usize].clone(),
                distinguished.contains(&position),
            )
        };

        // block view: original order, one block of n positions at a time
        out.push_str("block view:\n");
        let labels = [
            "i".to_string(),
            format!("u[{}]", index + 1),
            format!("v[{}]", index + 1),
        ];
        let rows = vec![
            (0..size)
                .map(|i| mark(i.to_string(), distinguished.contains(&i)))
                .collect::<Vec<_>>(),
            (0..size).map(|i| letter_cell(&pair.u_word, i)).collect(),
            (0..size).map(|i| letter_cell(&pair.v_word, i)).collect(),
        ];
        out.push_str(&render_rows(&labels, &rows, n));

        // group view: reading order with step p, one group per band
        out.push_str("group view (reading with step p):\n");
        for group in 0..n {
            let reading: Vec<usize> = (0..n)
                .map(|slot| geometry.phi(group * n + slot).unwrap())
                .collect();
            let labels = [
                format!("group {group}: phi(i)"),
                "a_i".to_string(),
                "b_i".to_string(),
            ];
            let rows = vec![
                reading
                    .iter()
                    .map(|&position| {
                        mark(position.to_string(), distinguished.contains(&position))
                    })
                    .collect::<Vec<_>>(),
                reading
                    .iter()
                    .map(|&position| letter_cell(&pair.u_word, position))
                    .collect(),
                reading
                    .iter()
                    .map(|&position| letter_cell(&pair.v_word, position))
                    .collect(),
            ];
            out.push_str(&render_rows(&labels, &rows, 0));
        }
    }

    // the interleaved words over the original alphabet
    let distinguished: BTreeSet<usize> = certificate.distinguished.positions().iter().copied().collect();
    let expanded_cell = |word: &Word, position: usize| -> String {
        let token = alphabet
            .token(word.letters()[position])
            .unwrap_or("?")
            .to_string();
        if distinguished.contains(&position) {
            format!("{token}{marker}")
        } else {
            token
        }
    };
    let labels = ["u'".to_string(), "v'".to_string()];
    let rows = vec![
        (0..certificate.u_expanded.len())
            .map(|position| expanded_cell(&certificate.u_expanded, position))
            .collect::<Vec<_>>(),
        (0..certificate.v_expanded.len())
            .map(|position| expanded_cell(&certificate.v_expanded, position))
            .collect(),
    ];
    out.push_str("\ninterleaved words:\n");
    out.push_str(&render_rows(&labels, &rows, construction.cycle_count() * n));
    out.push_str(&format!(
        "offset: {} (v' is u' shifted by {})\n",
        certificate.offset.value(),
        certificate.offset.value()
    ));
    out
}

/// Lays out labelled rows of equal length with aligned columns; a vertical
/// bar separates each band of `band` columns (0 for no bands).
fn render_rows(labels: &[String], rows: &[Vec<String>], band: usize) -> String {
    let columns = rows.first().map_or(0, Vec::len);
    let mut widths = vec![0usize; columns];
    for row in rows {
        for (column, cell) in row.iter().enumerate() {
            widths[column] = widths[column].max(cell.len());
        }
    }
    let label_width = labels.iter().map(String::len).max().unwrap_or(0);
    let mut out = String::new();
    for (label, row) in labels.iter().zip(rows) {
        out.push_str(&format!("{label:<label_width$} |"));
        for (column, cell) in row.iter().enumerate() {
            if band > 0 && column > 0 && column % band == 0 {
                out.push_str(" |");
            }
            out.push_str(&format!(" {cell:>width$}", width = widths[column]));
        }
        out.push('\n');
    }
    out
}
