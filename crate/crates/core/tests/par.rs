use superalg::par::*;

#[test]
fn modes_agree_and_keep_order() {
    let seq = map_indexed(ExecMode::Sequential, 100, |i| i * i);
    let par = map_indexed(ExecMode::Parallel, 100, |i| i * i);
    assert_eq!(seq, par);
    assert_eq!(seq[7], 49);
}
