//! Rebuild the bundled corpus: construct every diagram, compute its expected
//! values and print the JSON.
//!
//! ```text
//! cargo run --release --example freeze_corpus > crates/core/corpus/corpus.json
//! ```

use exkh::builder::{braid_closure, pretzel};
use exkh::corpus::{CorpusEntry, Expected};
use exkh::lando::{extreme_homology, DEFAULT_FACE_LIMIT};
use exkh::oracle::{jmax, jmin, khovanov_table};
use exkh::pd::{derive_signs, LinkDiagram};
use exkh::resolution::DEFAULT_CUBE_CAP;
use exkh::GradedAbelianGroup;

enum Recipe {
    Pd(&'static str),
    Braid(usize, Vec<i32>),
    Pretzel(Vec<i32>),
    Mirror(&'static str),
}

fn build(recipe: &Recipe) -> String {
    match recipe {
        Recipe::Pd(s) => s.parse::<LinkDiagram>().unwrap().pd().to_string(),
        Recipe::Braid(k, w) => braid_closure(*k, w).unwrap().pd.to_string(),
        Recipe::Pretzel(t) => pretzel(t).unwrap().pd.to_string(),
        Recipe::Mirror(s) => s.parse::<LinkDiagram>().unwrap().mirror().pd().to_string(),
    }
}

fn main() {
    use Recipe::*;
    let trefoil = "X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]";
    let mut recipes: Vec<(String, Recipe)> = vec![
        ("unknot".into(), Pd("O:1")),
        ("unlink_2".into(), Pd("O:2")),
        ("kink_positive".into(), Pd("X[1,1,2,2]")),
        ("kink_negative".into(), Pd("X[2,1,1,2]")),
        ("unknot_r2".into(), Braid(3, vec![1, -2])),
        ("unlink_r2".into(), Braid(2, vec![1, -1])),
        ("hopf".into(), Pd("X[1,3,2,4];X[3,1,4,2]")),
        ("trefoil_left".into(), Pd(trefoil)),
        ("trefoil_right".into(), Mirror(trefoil)),
        ("figure_eight".into(), Braid(3, vec![1, -2, 1, -2])),
    ];
    for k in 2..=7 {
        recipes.push((format!("torus_2_{k}"), Braid(2, vec![1; k])));
    }
    recipes.extend([
        ("twist_5_2".into(), Pretzel(vec![3, 1, 1])),
        ("twist_6_1".into(), Pretzel(vec![4, 1, 1])),
        ("twist_7_2".into(), Pretzel(vec![5, 1, 1])),
        ("pretzel_3_3_3".into(), Pretzel(vec![3, 3, 3])),
        ("pretzel_m2_3_7".into(), Pretzel(vec![-2, 3, 7])),
        ("torus_3_4".into(), Braid(3, [1, 2].repeat(4))),
        ("borromean".into(), Braid(3, [1, -2].repeat(3))),
        ("random_10".into(), Braid(4, vec![3, 3, 1, -1, 1, 2, 3, -1, -1, 1])),
        ("random_11".into(), Braid(4, vec![-3, -3, 2, 3, -1, 1, 2, 2, -2, -3, 2])),
        ("random_12".into(), Braid(4, vec![-3, -3, -1, -2, 1, 2, -1, 3, -3, -1, 2, 3])),
        ("torus_2_35".into(), Braid(2, vec![1; 35])),
        (
            "twisted_38".into(),
            Braid(4, [vec![-3, -3, -1], vec![-2; 27], vec![1, 2, -1, 3, -3, -1, 2, 3]].concat()),
        ),
    ]);

    let entries: Vec<CorpusEntry> = recipes
        .iter()
        .map(|(name, recipe)| {
            let pd = build(recipe);
            let d = derive_signs(&pd.parse().unwrap()).unwrap();
            let expected = if d.n() <= DEFAULT_CUBE_CAP {
                let table = khovanov_table(&d, DEFAULT_CUBE_CAP).unwrap();
                let row = |j| table.get(&j).cloned().unwrap_or_else(GradedAbelianGroup::zero);
                Expected {
                    jmin: jmin(&d),
                    jmax: jmax(&d),
                    kh_min: row(jmin(&d)),
                    kh_max: Some(row(jmax(&d))),
                    table: Some(table),
                    source: "cube".into(),
                }
            } else {
                Expected {
                    jmin: jmin(&d),
                    jmax: jmax(&d),
                    kh_min: extreme_homology(&d, DEFAULT_FACE_LIMIT).unwrap(),
                    kh_max: None,
                    table: None,
                    source: "graph".into(),
                }
            };
            CorpusEntry {
                name: name.clone(),
                pd,
                expected: Some(expected),
            }
        })
        .collect();
    println!("{}", serde_json::to_string_pretty(&entries).unwrap());
}
