fn main() {
    std::process::exit(riaho::main_with(std::env::args_os()));
}
