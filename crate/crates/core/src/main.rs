fn main() {
    let mut out = std::io::stdout();
    let mut err = std::io::stderr();
    let code = localekr::cli::run(std::env::args_os(), &mut out, &mut err);
    let _ = std::io::Write::flush(&mut out);
    std::process::exit(code);
}
