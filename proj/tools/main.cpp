#include "cli/commands.hpp"
#include "cli/run_config.hpp"
#include "markovpi/error.hpp"

#include <exception>
#include <iostream>

int main(int argc, char** argv) {
    using namespace markovpi;
    try {
        const cli::RunConfig cfg = cli::parse_config(argc, argv);
        cli::run(cfg, std::cout);
        std::cout.flush();
        return 0;
    } catch (const cli::HelpRequested& help) {
        std::cout << help.text;
        return 0;
    } catch (const Error& e) {
        std::cerr << "ERROR " << to_string(e.code()) << ": " << e.what() << '\n';
        return cli::exit_code(category_of(e.code()));
    } catch (const std::exception& e) {
        std::cerr << "ERROR Internal: " << e.what() << '\n';
        return 5;
    }
}
