//! `plot-script`: emit a gnuplot script referencing already-written CSVs.
//! The tool never renders images itself.

use std::path::{Path, PathBuf};

use crate::config::Config;
use crate::CliError;

use super::{emit, Globals};

fn check_exists(paths: &[PathBuf]) -> Result<(), CliError> {
    for p in paths {
        if !p.is_file() {
            return Err(CliError::Config(format!(
                "csv file does not exist: {}",
                p.display()
            )));
        }
    }
    Ok(())
}

fn require_count(figure: &str, paths: &[PathBuf], want: usize) -> Result<(), CliError> {
    if paths.len() != want {
        return Err(CliError::Config(format!(
            "{figure} expects exactly {want} --csv argument(s), got {}",
            paths.len()
        )));
    }
    Ok(())
}

fn quoted(p: &Path) -> String {
    format!("'{}'", p.display())
}

pub fn run(
    cfg: &Config,
    globals: &Globals,
    figure: Option<&str>,
    csv: &[PathBuf],
) -> Result<(), CliError> {
    let figure = cfg.resolve_string("figure", figure, "");
    if figure.is_empty() {
        return Err(CliError::Config(
            "missing required flag --figure (or config key `figure`); \
             expected fig1, fig2 or fig3"
                .into(),
        ));
    }
    check_exists(csv)?;
    let mut s = String::new();
    s.push_str("set datafile separator ','\n");
    s.push_str("set key outside\n");
    match figure.as_str() {
        "fig1" => {
            require_count("fig1", csv, 1)?;
            s.push_str("set xlabel 'S'\n");
            s.push_str("set ylabel 'N'\n");
            s.push_str("set logscale y\n");
            s.push_str(&format!(
                "plot {f} using 1:2 with linespoints title 'N_Q', \\\n     \
                 {f} using 1:3 with linespoints title 'N_BLP', \\\n     \
                 {f} using 1:4 with linespoints title 'N_I', \\\n     \
                 {f} using 1:5 with linespoints title 'N_R'\n",
                f = quoted(&csv[0])
            ));
        }
        "fig2" => {
            require_count("fig2", csv, 3)?;
            s.push_str("set xlabel 't [1/gamma0]'\n");
            s.push_str("set ylabel 'Q'\n");
            let plots: Vec<String> = csv
                .iter()
                .map(|p| {
                    format!(
                        "{} using 1:2 with lines title '{}'",
                        quoted(p),
                        p.file_stem().unwrap_or_default().to_string_lossy()
                    )
                })
                .collect();
            s.push_str(&format!("plot {}\n", plots.join(", \\\n     ")));
        }
        "fig3" => {
            require_count("fig3", csv, 1)?;
            s.push_str("set xlabel 't [1/gamma0]'\n");
            s.push_str("set ylabel 'value'\n");
            s.push_str(&format!(
                "plot {f} using 1:2 with lines title 'Q', \\\n     \
                 {f} using 1:3 with lines title 'C', \\\n     \
                 {f} using 1:4 with lines title 'I', \\\n     \
                 {f} using 1:5 with lines title '|J|/2'\n",
                f = quoted(&csv[0])
            ));
        }
        other => {
            return Err(CliError::Config(format!(
                "unknown --figure `{other}` (expected fig1, fig2 or fig3)"
            )))
        }
    }
    emit(globals.out.as_deref(), &s)
}
