//! Small line-oriented tables: vocabularies, assignments, confusion matrices
//! and permutations.

use std::fmt::Write as _;

use bicut_core::baselines::ConfusionMatrix;
use bicut_core::text::Vocabulary;

use super::FormatError;

/// One term per line.
pub fn vocabulary_to_text(v: &Vocabulary) -> String {
    v.terms().iter().map(|t| format!("{t}\n")).collect()
}

pub fn parse_vocabulary(text: &str) -> Vocabulary {
    Vocabulary::new(text.lines().filter(|l| !l.is_empty()).map(str::to_string))
}

/// `doc_id <TAB> cluster_id` lines.
pub fn assignment_to_text<S: AsRef<str>>(ids: &[S], clusters: &[usize]) -> String {
    let mut out = String::new();
    for (id, c) in ids.iter().zip(clusters) {
        let _ = writeln!(out, "{}\t{c}", id.as_ref());
    }
    out
}

pub fn parse_assignment(text: &str) -> Result<Vec<(String, usize)>, FormatError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(n, l)| {
            let bad = || FormatError::Parse {
                line: n + 1,
                message: "expected `doc_id<TAB>cluster_id`".into(),
            };
            let (id, c) = l.split_once('\t').ok_or_else(bad)?;
            Ok((id.to_string(), c.trim().parse().map_err(|_| bad())?))
        })
        .collect()
}

/// Header row `cluster` followed by the true label names, then one row per
/// predicted cluster.
pub fn confusion_to_tsv<S: AsRef<str>>(cm: &ConfusionMatrix, true_labels: &[S]) -> String {
    let mut out = String::from("cluster");
    for l in true_labels {
        out.push('\t');
        out.push_str(l.as_ref());
    }
    out.push('\n');
    for (r, row) in cm.counts.iter().enumerate() {
        let _ = write!(out, "{r}");
        for c in row {
            let _ = write!(out, "\t{c}");
        }
        out.push('\n');
    }
    out
}

/// One index per line.
pub fn permutation_to_text(p: &[usize]) -> String {
    p.iter().map(|i| format!("{i}\n")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn assignment_round_trip() {
        let text = assignment_to_text(&["d1", "d2"], &[0, 3]);
        assert_eq!(text, "d1\t0\nd2\t3\n");
        assert_eq!(
            parse_assignment(&text).unwrap(),
            vec![("d1".into(), 0), ("d2".into(), 3)]
        );
        assert!(matches!(
            parse_assignment("d1\tx"),
            Err(FormatError::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn vocabulary_round_trip() {
        let v = Vocabulary::new(["beta".to_string(), "alpha".to_string()]);
        assert_eq!(vocabulary_to_text(&v), "alpha\nbeta\n");
        assert_eq!(parse_vocabulary(&vocabulary_to_text(&v)), v);
    }

    #[test]
    fn confusion_layout() {
        let cm = ConfusionMatrix {
            counts: vec![vec![3, 1], vec![0, 4]],
            k_true: 2,
        };
        assert_eq!(
            confusion_to_tsv(&cm, &["a", "b"]),
            "cluster\ta\tb\n0\t3\t1\n1\t0\t4\n"
        );
    }
}
