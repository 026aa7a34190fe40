use proptest::prelude::*;
use tqd_lhm::cli::{load_config, render, Preset};

fn document() -> impl Strategy<Value = String> {
    (
        prop::option::of(prop::sample::select(&Preset::ALL[..])),
        prop::option::of(0.0..1.0f64),
        prop::option::of(-1.0..1.0f64),
        prop::option::of(1e-3..1.0f64),
        (-5.0..-0.5f64, 0.5..5.0f64, 2usize..2000),
        prop::option::of(prop_oneof![
            (1e20..1e29f64).prop_map(|n| format!("density_n = {n:e}")),
            (1e-10..1e-6f64).prop_map(|t| format!("layer_thickness = {t:e}"))
        ]),
        prop::array::uniform3(prop::option::of(0.0..3.0f64)),
        prop::option::of(0.0..0.3f64),
        (
            any::<bool>(),
            prop::option::of(1e-4..0.5f64),
            any::<bool>(),
            prop::option::of("[a-z]{1,8}(/[a-z]{1,8})?\\.(csv|json)"),
        ),
    )
        .prop_map(
            |(preset, pump, ta, rabi, (start, stop, steps), density, gammas, deph, (ordinary, tol, json, out))| {
                let mut lines = Vec::new();
                if let Some(p) = preset {
                    lines.push(format!("preset = {}", p.name()));
                    if ordinary {
                        lines.push("family = true".to_string());
                    }
                }
                if let Some(v) = pump {
                    lines.push(format!("pump_rate = {v}"));
                }
                if let Some(v) = ta {
                    lines.push(format!("tunneling_a = {v}"));
                }
                if let Some(v) = rabi {
                    lines.push(format!("rabi_e = {v}"));
                }
                lines.push(format!("detuning_start = {start}\ndetuning_stop = {stop}\nsteps = {steps}"));
                lines.extend(density);
                for (k, g) in gammas.iter().enumerate() {
                    if let Some(g) = g {
                        lines.push(format!("gamma_{}1 = {g}", k + 2));
                    }
                }
                if let Some(d) = deph {
                    lines.push(format!("dephasing_32 = {d}"));
                }
                if ordinary {
                    lines.push("angular_frequency_convention = ordinary".into());
                }
                if let Some(t) = tol {
                    lines.push(format!("abs_tol = {t}"));
                }
                if json {
                    lines.push("format = json".into());
                }
                if let Some(o) = out {
                    lines.push(format!("output = {o}"));
                }
                lines.join("\n")
            },
        )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn load_of_render_is_identity(doc in document()) {
        let cfg = load_config(&doc).unwrap();
        let rendered = render(&cfg);
        let again = load_config(&rendered).unwrap();
        prop_assert_eq!(&again, &cfg);
        prop_assert_eq!(render(&again), rendered);
    }
}

#[test]
fn every_documented_key_is_accepted() {
    let doc = "preset = fig2\npump_rate = 0.1\ntunneling_a = 0.2\ntunneling_b = 0.3\nrabi_e = 0.04\nrabi_b = 0.2\n\
               detuning_start = -1\ndetuning_stop = 1\nsteps = 11\ndensity_n = 1e27\ngamma_21 = 1\ngamma_31 = 1\n\
               gamma_41 = 1\ndephasing_21 = 0.01\ndephasing_43 = 0.02\nangular_frequency_convention = true\n\
               abs_tol = 0.1\noutput = a.json\nformat = json";
    let cfg = load_config(doc).unwrap();
    assert_eq!(cfg.steps, 11);
    assert_eq!(cfg.params.dephasing.get(4, 3), 0.02);
    assert_eq!(load_config(&render(&cfg)).unwrap(), cfg);
}
