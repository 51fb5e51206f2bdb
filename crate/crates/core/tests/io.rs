use maxeig_core::io::{parse, parse_auto, to_csv, to_json, Format, MatrixFile};
use maxeig_core::random::{random_nonnegative, rng};
use maxeig_core::{Error, Matrix};
use proptest::prelude::*;

fn bits(a: &Matrix) -> Vec<u64> {
    a.as_slice().iter().map(|v| v.to_bits()).collect()
}

proptest! {
    #[test]
    fn json_round_trip_is_bit_exact(n in 1usize..=9, seed in any::<u64>(), scale in -200i32..200) {
        let a = random_nonnegative(&mut rng(seed), n, 0.3).scale(10f64.powi(scale)).unwrap();
        prop_assume!(a.as_slice().iter().all(|v| v.is_finite()));
        let back = parse(&to_json(&a), Format::Json).unwrap();
        prop_assert_eq!(bits(&back), bits(&a));
    }

    #[test]
    fn csv_round_trip_is_bit_exact(n in 1usize..=9, seed in any::<u64>()) {
        let a = random_nonnegative(&mut rng(seed), n, 0.3);
        prop_assert_eq!(bits(&parse(&to_csv(&a), Format::Csv).unwrap()), bits(&a));
    }

    #[test]
    fn arbitrary_text_never_panics(s in "\\PC{0,64}") {
        let _ = parse_auto(&s);
    }
}

#[test]
fn reads_files_in_both_formats() {
    let dir = std::env::temp_dir().join(format!("maxeig-io-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("a.csv");
    let json = dir.join("a.json");
    std::fs::write(&csv, "0,8,1\n3,0,2\n4,1,1\n").unwrap();
    std::fs::write(&json, "\n  {\"n\":3,\"rows\":[[0,8,1],[3,0,2],[4,1,1]]}").unwrap();
    let a = MatrixFile::read(&csv).unwrap();
    let b = MatrixFile::read(&json).unwrap();
    assert_eq!(a.format, Format::Csv);
    assert_eq!(b.format, Format::Json);
    assert_eq!(a.parsed, b.parsed);
    assert!(matches!(
        MatrixFile::read(dir.join("missing.csv")),
        Err(Error::Io(_))
    ));
    std::fs::write(&csv, "1,2\n3\n").unwrap();
    assert!(matches!(MatrixFile::read(&csv), Err(Error::Parse(_))));
    std::fs::remove_dir_all(&dir).unwrap();
}
