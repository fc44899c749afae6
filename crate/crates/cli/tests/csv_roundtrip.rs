use ebcount::counts_csv::CountMatrixFile;
use ebcount_core::CountVector;
use proptest::prelude::*;

fn matrix() -> impl Strategy<Value = CountMatrixFile> {
    (2usize..12).prop_flat_map(|k| {
        (
            "[a-z][a-z0-9_ ]{0,8}",
            prop::collection::hash_set("[A-Za-z][A-Za-z0-9_.-]{0,10}", k..=k),
            prop::collection::vec(
                (
                    "[A-Za-z0-9_,\" -]{1,12}",
                    prop::collection::vec(0u64..100_000, k..=k),
                ),
                0..20,
            ),
        )
            .prop_map(|(id_header, taxa, rows)| CountMatrixFile {
                id_header: id_header.trim().to_string(),
                taxa: taxa.into_iter().collect(),
                rows: rows
                    .into_iter()
                    .map(|(id, c)| (id.trim().to_string(), CountVector::new(c).unwrap()))
                    .collect(),
            })
    })
}

proptest! {
    #[test]
    fn ingest_serialize_ingest_is_identity(m in matrix()) {
        let mut buf = Vec::new();
        m.to_writer(&mut buf).unwrap();
        let back = CountMatrixFile::from_reader(&buf[..]).unwrap();
        prop_assert_eq!(&back, &m);
        let mut again = Vec::new();
        back.to_writer(&mut again).unwrap();
        prop_assert_eq!(again, buf);
    }
}
