use std::io::BufWriter;

fn main() {
    let mut out = BufWriter::new(std::io::stdout());
    let mut err = std::io::stderr();
    let code = qunimodal::cli::run(std::env::args_os(), &mut out, &mut err);
    drop(out);
    std::process::exit(code);
}
