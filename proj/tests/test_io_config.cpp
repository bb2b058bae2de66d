#include "gjr/chain_io.hpp"
#include "gjr/config.hpp"
#include "gjr/errors.hpp"
#include "gjr/series_io.hpp"

#include <catch_amalgamated.hpp>

#include <random>
#include <sstream>

using gjr::ParamVector;

TEST_CASE("series CSV round-trips bit-exactly", "[io][property]") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto sim = gjr::simulate({0.03, 0.85, 0.05, 0.1}, 50, static_cast<std::uint64_t>(trial));
        std::vector<double> raw(30);
        for (auto& v : raw) v = u(rng) * std::pow(10.0, static_cast<int>(u(rng)) % 12);
        for (const auto& series : {sim, gjr::ReturnSeries(raw)}) {
            std::stringstream ss;
            gjr::write_series_csv(ss, series);
            const auto back = gjr::read_series_csv(ss);
            REQUIRE(std::vector<double>(back.y().begin(), back.y().end()) ==
                    std::vector<double>(series.y().begin(), series.y().end()));
            REQUIRE(back.sigma2_true() == series.sigma2_true());
        }
    }
}

TEST_CASE("series CSV headers", "[io]") {
    std::stringstream with;
    gjr::write_series_csv(with, gjr::simulate({0.03, 0.85, 0.05, 0.1}, 3, 1));
    CHECK(with.str().rfind("y,sigma2_true\n", 0) == 0);
    std::stringstream without;
    gjr::write_series_csv(without, gjr::ReturnSeries(std::vector{0.5, -0.25}));
    CHECK(without.str() == "y\n0.5\n-0.25\n");
}

TEST_CASE("series CSV parse errors carry the line number", "[io]") {
    auto line_of = [](const std::string& text) -> std::size_t {
        std::istringstream in(text);
        try {
            (void)gjr::read_series_csv(in);
        } catch (const gjr::ParseError& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of("x\n1\n") == 1);
    CHECK(line_of("") == 1);
    CHECK(line_of("y\n1\n2\nabc\n") == 4);
    CHECK(line_of("y\n1,2\n") == 2);
    CHECK(line_of("y,sigma2_true\n1,0.5\n1,-0.5\n") == 3);
    CHECK(line_of("y\n") == 1);
    CHECK(line_of("y\n1\n\n2\n") == 0);
}

TEST_CASE("chain CSV round trip and schema", "[io]") {
    gjr::Chain chain;
    chain.draws = {{0.03, 0.85, 0.05, 0.1}, {0.031, 0.84, 0.051, 0.09}, {0.031, 0.84, 0.051, 0.09}};
    chain.accepted = {true, true, false};
    std::stringstream ss;
    gjr::write_chain_csv(ss, chain);
    const auto text = ss.str();
    CHECK(text.rfind("step,alpha,beta,omega,lambda,accepted\n1,0.029999999999999999,", 0) == 0);
    const auto back = gjr::read_chain_csv(ss);
    CHECK(back.draws == chain.draws);
    CHECK(back.accepted == chain.accepted);

    auto line_of = [](const std::string& body) -> std::size_t {
        std::istringstream in("step,alpha,beta,omega,lambda,accepted\n" + body);
        try {
            (void)gjr::read_chain_csv(in);
        } catch (const gjr::ParseError& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of("1,0.1,0.2,0.3,0.4,1\n2,0.1,0.2,0.3\n") == 3);
    CHECK(line_of("1,0.1,0.2,0.3,0.4,2\n") == 2);
    CHECK(line_of("1,0.1,0.2,0.3,0.4,1\n3,0.1,0.2,0.3,0.4,1\n") == 3);
    CHECK(line_of("1,0.1,x,0.3,0.4,1\n") == 2);
    CHECK(line_of("1,0.1,0.2,0.3,0.4,1\n") == 0);

    std::istringstream bad_header("step,alpha\n");
    CHECK_THROWS_AS(gjr::read_chain_csv(bad_header), gjr::ParseError);
}

TEST_CASE("proposal history CSV layout", "[io]") {
    gjr::ProposalUpdate u;
    u.index = 3;
    u.count = 4000;
    u.mean = Eigen::Vector4d(1, 2, 3, 4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) u.covariance(r, c) = 10 * std::min(r, c) + std::max(r, c);
    std::stringstream ss;
    gjr::write_history_csv(ss, {u});
    std::string header, row;
    std::getline(ss, header);
    std::getline(ss, row);
    CHECK(header ==
          "update,count,m_alpha,m_beta,m_omega,m_lambda,v_alpha_alpha,v_alpha_beta,v_alpha_omega,"
          "v_alpha_lambda,v_beta_beta,v_beta_omega,v_beta_lambda,v_omega_omega,v_omega_lambda,"
          "v_lambda_lambda");
    CHECK(row == "3,4000,1,2,3,4,0,1,2,3,11,12,13,22,23,33");
}

TEST_CASE("config parsing and precedence", "[config]") {
    gjr::ConfigMap config;
    std::istringstream file(
        "# comment\n"
        "burn_in = 100\n"
        "retained=2000\n"
        "\n"
        "metropolis_steps=0.001, 0.02,0.03,0.04\n"
        "theta_init=0.04,0.8,0.06,0.05\n"
        "nu=12\n"
        "freeze_after=3\n"
        "sigma2_init=0.5\n");
    config.load(file);
    config.set_assignment("retained=5000");  // flag beats file

    const auto c = gjr::apply_config(gjr::AdaptiveConfig{}, config);
    CHECK(c.burn_in == 100);
    CHECK(c.retained == 5000);
    CHECK(c.initial_pool == 1000);  // default survives
    CHECK(c.metropolis_steps == std::array<double, 4>{0.001, 0.02, 0.03, 0.04});
    CHECK(c.theta_init == ParamVector{0.04, 0.8, 0.06, 0.05});
    CHECK(c.nu == 12.0);
    CHECK(c.freeze_after == 3u);
    CHECK(c.sigma2_init.fixed == 0.5);

    const auto e = gjr::apply_config(gjr::ExperimentSpec{}, config);
    CHECK(e.adaptive.retained == 5000);
    CHECK(e.metropolis_d == c.metropolis_steps);
}

TEST_CASE("config rejects unknown keys and bad values", "[config]") {
    gjr::ConfigMap config;
    CHECK_THROWS_AS(config.set("burnin", "5"), gjr::ConfigError);
    CHECK_THROWS_AS(config.set_assignment("no_equals_sign"), gjr::ConfigError);
    std::istringstream file("retained=10\nbogus=1\n");
    try {
        config.load(file, "cfg");
        FAIL("expected ConfigError");
    } catch (const gjr::ConfigError& e) {
        CHECK(std::string(e.what()).find("cfg:2") != std::string::npos);
    }

    for (const char* bad : {"retained=-1", "nu=abc", "metropolis_steps=1,2,3", "auto_tune=maybe"}) {
        gjr::ConfigMap m;
        m.set_assignment(bad);
        CHECK_THROWS_AS((void)gjr::apply_config(gjr::ExperimentSpec{}, m), gjr::ConfigError);
    }
}

TEST_CASE("experiment keys", "[config]") {
    gjr::ConfigMap m;
    m.set_assignment("true_params=0.05,0.9,0.01,0.02");
    m.set_assignment("n=500");
    m.set_assignment("data_seed=3");
    m.set_assignment("adaptive_seed=4");
    m.set_assignment("metropolis_seed=5");
    m.set_assignment("metropolis_d=0.1,0.1,0.1,0.1");
    m.set_assignment("auto_tune=true");
    const auto e = gjr::apply_config(gjr::ExperimentSpec{}, m);
    CHECK(e.true_params == ParamVector{0.05, 0.9, 0.01, 0.02});
    CHECK(e.n == 500);
    CHECK(e.data_seed == 3);
    CHECK(e.adaptive_seed == 4);
    CHECK(e.metropolis_seed == 5);
    CHECK(e.metropolis_d[2] == 0.1);
    CHECK(e.auto_tune);
}
