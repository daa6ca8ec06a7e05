fn main() {
    let (out, err, code) = eigentwist::cli::main_with(std::env::args_os());
    print!("{out}");
    eprint!("{err}");
    std::process::exit(code);
}
