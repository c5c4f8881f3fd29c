//! Gnuplot scripts over the CSV files of a run.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::config::Plot;
use crate::error::{io_err, CliError, CliResult};
use crate::output::{write_file, Manifest, MANIFEST};

fn header(out: &mut String, png: &str, title: &str) {
    let _ = writeln!(out, "set terminal pngcairo size 1000,600");
    let _ = writeln!(out, "set output '{png}'");
    let _ = writeln!(out, "set datafile separator ','");
    let _ = writeln!(out, "set key autotitle columnhead");
    let _ = writeln!(out, "set title '{title}'");
}

fn overlay(m: &Manifest) -> String {
    let mut out = String::new();
    header(&mut out, "overlay.png", &format!("{} ({})", m.config.name, m.scheme));
    out.push_str("set xlabel 'x'\nset ylabel 'u'\n");
    let first = m.snapshots.first().expect("at least the initial snapshot");
    let last = m.snapshots.last().expect("at least the initial snapshot");
    let _ = writeln!(
        out,
        "plot '{}' using 2:3 with lines title 't = {}', \\\n     '{}' using 2:3 with linespoints pt 7 ps 0.4 title 't = {}'",
        first.file, first.t, last.file, last.t
    );
    out
}

fn waterfall(m: &Manifest) -> String {
    let mut out = String::new();
    header(&mut out, "waterfall.png", &format!("{} ({}): evolution in time", m.config.name, m.scheme));
    out.push_str("set xlabel 'x'\nset ylabel 't'\nunset key\n");
    let _ = writeln!(out, "offset = 0.5");
    let parts: Vec<String> = m
        .snapshots
        .iter()
        .map(|s| format!("'{}' using 2:($3 + {} / offset) with lines lc rgb 'black'", s.file, s.t))
        .collect();
    let _ = writeln!(out, "plot {}", parts.join(", \\\n     "));
    out
}

fn energy_density(m: &Manifest) -> String {
    let mut out = String::new();
    header(&mut out, "energy_density.png", &format!("{} ({})", m.config.name, m.scheme));
    let last = m.snapshots.last().expect("at least the initial snapshot");
    out.push_str("set multiplot layout 1,2\nunset key\nset xlabel 'x'\n");
    let _ = writeln!(out, "set title 'u at t = {}'", last.t);
    let _ = writeln!(out, "plot '{}' using 2:3 with linespoints pt 7 ps 0.4", last.file);
    let _ = writeln!(out, "set title 'energy density h/q at t = {}'", last.t);
    let _ = writeln!(out, "plot '{}' using 2:($4 > 1e-8 ? $6 / $4 : 1/0) with impulses", last.file);
    out.push_str("unset multiplot\n");
    out
}

pub fn script(kind: Plot, manifest: &Manifest) -> (String, String) {
    match kind {
        Plot::Overlay => ("overlay.gp".into(), overlay(manifest)),
        Plot::Waterfall => ("waterfall.gp".into(), waterfall(manifest)),
        Plot::EnergyDensity => ("energy_density.gp".into(), energy_density(manifest)),
    }
}

fn run_dirs(dir: &Path) -> CliResult<Vec<PathBuf>> {
    if dir.join(MANIFEST).is_file() {
        return Ok(vec![dir.to_path_buf()]);
    }
    let mut dirs = Vec::new();
    if dir.is_dir() {
        for entry in std::fs::read_dir(dir).map_err(io_err(dir))? {
            let path = entry.map_err(io_err(dir))?.path();
            if path.join(MANIFEST).is_file() {
                dirs.push(path);
            }
        }
    }
    dirs.sort();
    if dirs.is_empty() {
        return Err(CliError::MissingArtifacts(dir.display().to_string()));
    }
    Ok(dirs)
}

/// Writes the configured plot scripts next to the CSVs of every run found
/// in `dir` or its immediate subdirectories.
pub fn emit_plots(dir: &Path) -> CliResult<Vec<PathBuf>> {
    let mut written = Vec::new();
    for run in run_dirs(dir)? {
        let manifest = Manifest::read(&run)?;
        for kind in manifest.config.plots_or_default() {
            let (name, text) = script(kind, &manifest);
            written.push(write_file(&run.join(name), &text)?);
        }
    }
    Ok(written)
}
