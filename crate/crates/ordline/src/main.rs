fn main() {
    let (report, code) = ordline::cli::run(std::env::args());
    print!("{report}");
    std::process::exit(code);
}
