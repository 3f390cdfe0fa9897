fn main() {
    let (code, text) = adams_hopf::cli::run(std::env::args_os());
    if code == 2 {
        eprint!("{text}");
    } else {
        print!("{text}");
    }
    std::process::exit(code);
}
