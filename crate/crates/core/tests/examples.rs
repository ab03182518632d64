macro_rules! example {
    ($name:ident) => {
        mod $name {
            include!(concat!(
                env!("CARGO_MANIFEST_DIR"),
                "/examples/",
                stringify!($name),
                ".rs"
            ));
        }
    };
}

example!(special_functions);
example!(modular);
example!(weyl_group);
example!(xi_determinants);
example!(bilinear_relations);
example!(painleve_solution);
example!(propagation);
example!(verify_report);

#[test]
fn examples_run() {
    special_functions::run_example().unwrap();
    modular::run_example().unwrap();
    weyl_group::run_example().unwrap();
    xi_determinants::run_example().unwrap();
    bilinear_relations::run_example().unwrap();
    painleve_solution::run_example().unwrap();
    propagation::run_example().unwrap();
    verify_report::run_example().unwrap();
}
