use bicut_core::text::{
    apply_weighting, build_matrix, mutual_information_scores, select_features, tokenize, Corpus,
    Document, FeatureSelector, TokenizerConfig, Vocabulary, WeightingScheme,
};
use bicut_core::SparseMatrix;
use proptest::prelude::*;

fn corpus_strategy() -> impl Strategy<Value = Vec<String>> {
    prop::collection::vec(
        prop::collection::vec(
            prop::sample::select(vec!["ab", "cd", "ef", "gh", "ij", "x", "!!", " "]),
            0..20,
        ),
        1..8,
    )
    .prop_map(|docs| docs.into_iter().map(|words| words.join(" ")).collect())
}

fn corpus(texts: &[String]) -> Corpus {
    Corpus::new(
        texts
            .iter()
            .enumerate()
            .map(|(i, t)| Document::new(format!("d{i}"), None, t.clone()))
            .collect(),
    )
    .unwrap()
}

fn counts_strategy() -> impl Strategy<Value = Vec<Vec<f64>>> {
    (1usize..7, 1usize..7)
        .prop_flat_map(|(m, n)| prop::collection::vec(prop::collection::vec(0u8..6, n), m))
        .prop_map(|rows| {
            rows.into_iter()
                .map(|r| r.into_iter().map(f64::from).collect())
                .collect()
        })
}

proptest! {
    #[test]
    fn token_mass_is_conserved(texts in corpus_strategy()) {
        let c = corpus(&texts);
        let cfg = TokenizerConfig::default();
        let tokens: usize = texts.iter().map(|t| tokenize(t, &cfg).len()).sum();
        match build_matrix(&c, &cfg) {
            Ok(td) => {
                prop_assert_eq!(td.matrix.total(), tokens as f64);
                for (j, t) in texts.iter().enumerate() {
                    prop_assert_eq!(td.matrix.col_sums()[j], tokenize(t, &cfg).len() as f64);
                }
            }
            Err(_) => prop_assert_eq!(tokens, 0),
        }
    }

    #[test]
    fn pipeline_is_deterministic(texts in corpus_strategy()) {
        let c = corpus(&texts);
        let cfg = TokenizerConfig { stem: true, ..TokenizerConfig::default() };
        let a = build_matrix(&c, &cfg);
        let b = build_matrix(&c, &cfg);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn mutual_information_is_nonnegative(rows in counts_strategy()) {
        let m = SparseMatrix::from_dense(&rows).unwrap();
        prop_assert!(mutual_information_scores(&m).iter().all(|&s| s >= -1e-12));
    }

    #[test]
    fn mutual_information_matches_double_loop(rows in counts_strategy()) {
        let m = SparseMatrix::from_dense(&rows).unwrap();
        let total: f64 = rows.iter().flatten().sum();
        prop_assume!(total > 0.0);
        let got = mutual_information_scores(&m);
        for (i, row) in rows.iter().enumerate() {
            let pi: f64 = row.iter().sum::<f64>() / total;
            let mut want = 0.0;
            for (j, &w) in row.iter().enumerate() {
                let pj: f64 = rows.iter().map(|r| r[j]).sum::<f64>() / total;
                let pij = w / total;
                if pij > 0.0 {
                    want += pij * (pij / (pi * pj)).ln();
                }
            }
            prop_assert!((got[i] - want).abs() < 1e-12);
        }
    }

    #[test]
    fn top_mutual_information_is_the_top_of_the_scores(rows in counts_strategy(), k in 1usize..8) {
        let m = SparseMatrix::from_dense(&rows).unwrap();
        let vocab = Vocabulary::new((0..m.n_rows()).map(|i| format!("t{i:02}")));
        let scores = mutual_information_scores(&m);
        let (kept, v) = select_features(&m, &vocab, FeatureSelector::TopMutualInformation(k)).unwrap();
        let mut order: Vec<usize> = (0..m.n_rows()).collect();
        order.sort_by(|&a, &b| scores[b].partial_cmp(&scores[a]).unwrap().then(a.cmp(&b)));
        let mut want: Vec<String> = order.iter().take(k).map(|&i| format!("t{i:02}")).collect();
        want.sort();
        prop_assert_eq!(v.terms(), &want[..]);
        prop_assert_eq!(kept.n_rows(), want.len());
    }

    #[test]
    fn weighting_monotonicity(rows in counts_strategy(), cap in 1u32..5) {
        let m = SparseMatrix::from_dense(&rows).unwrap();
        let t = apply_weighting(&m, WeightingScheme::Trimmed(cap)).unwrap();
        for (i, j, v) in t.iter() {
            prop_assert!(v <= m.get(i, j));
        }
        let n = m.n_cols();
        let tfidf = apply_weighting(&m, WeightingScheme::TfIdf).unwrap();
        for i in 0..m.n_rows() {
            let df = m.row(i).0.len();
            if df == n {
                prop_assert_eq!(tfidf.row(i).0.len(), 0);
            } else {
                prop_assert_eq!(tfidf.row(i).0, m.row(i).0);
            }
        }
        prop_assert_eq!(apply_weighting(&m, WeightingScheme::RawCount).unwrap(), m);
    }
}

#[test]
fn hand_counted_matrix() {
    let c = Corpus::new(vec![
        Document::new("1", Some("x"), "ab bc"),
        Document::new("2", Some("y"), "bc bc"),
    ])
    .unwrap();
    let td = build_matrix(&c, &TokenizerConfig::default()).unwrap();
    assert_eq!(td.matrix.to_dense().as_slice(), &[1.0, 0.0, 1.0, 2.0]);
    assert_eq!(c.labels(), vec!["x", "y"]);
}
