#include <sstream>

#include "adapilot/error.hpp"
#include "adapilot/grid.hpp"
#include "adapilot/rng.hpp"
#include "doctest.h"

using namespace adapilot;

namespace {

std::vector<std::uint8_t> random_bits(std::size_t count, std::uint64_t seed) {
    auto rng = make_rng(seed);
    std::vector<std::uint8_t> bits(count);
    for (auto& b : bits) {
        b = static_cast<std::uint8_t>(rng() & 1);
    }
    return bits;
}

LinkConfig small_config(int n_sub = 16) {
    LinkConfig c;
    c.num_subcarriers = n_sub;
    c.cp_length = 4;
    return c;
}

}  // namespace

TEST_CASE("block layout with period 1 fills every cell with pilots") {
    const LinkConfig cfg = small_config();
    PilotLayout layout;
    layout.arrangement = PilotArrangement::BlockType;
    layout.time_period = 1;

    const GridBuild built = build_grid(cfg, layout, 4, {});
    CHECK(built.grid.count_role(CellRole::Data) == 0);
    CHECK(built.grid.count_role(CellRole::Pilot) == 4 * 16);
    CHECK(built.bits_consumed == 0);
    CHECK(data_rate_fraction(built.grid) == doctest::Approx(0.0));
}

TEST_CASE("block layout, period 4 over 8 symbols") {
    const LinkConfig cfg = small_config();
    PilotLayout layout;
    layout.time_period = 4;

    const auto bits = random_bits(16 * 8 * 2, 7);
    const GridBuild built = build_grid(cfg, layout, 8, bits);
    for (int t = 0; t < 8; ++t) {
        const bool pilot_symbol = (t == 0 || t == 4);
        for (int k = 0; k < 16; ++k) {
            CHECK(built.grid.role(t, k) == (pilot_symbol ? CellRole::Pilot : CellRole::Data));
        }
    }
    CHECK(data_rate_fraction(built.grid) == doctest::Approx(0.75));
    CHECK(built.bits_consumed == 6u * 16u * 2u);
}

TEST_CASE("comb layout with spacing 4 puts pilots at k = 0,4,8,12") {
    const LinkConfig cfg = small_config();
    PilotLayout layout;
    layout.arrangement = PilotArrangement::CombType;
    layout.time_period = 1;
    layout.freq_spacing = 4;

    const auto bits = random_bits(16 * 3 * 2, 11);
    const GridBuild built = build_grid(cfg, layout, 3, bits);
    for (int t = 0; t < 3; ++t) {
        for (int k = 0; k < 16; ++k) {
            const bool pilot = (k % 4 == 0);
            CHECK(built.grid.role(t, k) == (pilot ? CellRole::Pilot : CellRole::Data));
        }
    }
    CHECK(data_rate_fraction(built.grid) == doctest::Approx(0.75));
}

TEST_CASE("all-data grid has data rate 1") {
    OfdmGrid grid;
    grid.num_symbols = 2;
    grid.num_subcarriers = 4;
    grid.symbols.assign(8, cplx(1.0, 0.0));
    grid.roles.assign(8, CellRole::Data);
    CHECK(data_rate_fraction(grid) == doctest::Approx(1.0));
}

TEST_CASE("block-type data rate is 1 - 1/P when P divides the symbol count") {
    const LinkConfig cfg = small_config();
    for (int period : {2, 4, 8}) {
        PilotLayout layout;
        layout.time_period = period;
        const auto bits = random_bits(16 * 32 * 2, 13 + period);
        const GridBuild built = build_grid(cfg, layout, 32, bits);
        CHECK(data_rate_fraction(built.grid) ==
              doctest::Approx(1.0 - 1.0 / period).epsilon(1e-12));
    }
}

TEST_CASE("grid build underruns raise InsufficientBits") {
    const LinkConfig cfg = small_config();
    PilotLayout layout;
    layout.time_period = 2;
    const auto bits = random_bits(5, 3);  // far too few
    CHECK_THROWS_AS(build_grid(cfg, layout, 4, bits), InsufficientBitsError);
}

TEST_CASE("layout invariants are enforced") {
    PilotLayout block;
    block.arrangement = PilotArrangement::BlockType;
    block.freq_spacing = 2;
    CHECK_THROWS_AS(block.validate(), LayoutInvalidError);

    PilotLayout comb;
    comb.arrangement = PilotArrangement::CombType;
    comb.time_period = 2;
    CHECK_THROWS_AS(comb.validate(), LayoutInvalidError);
}

TEST_CASE("rebuilding from the same seed and bits is bit-identical") {
    const LinkConfig cfg = small_config();
    PilotLayout layout;
    layout.time_period = 2;
    const auto bits = random_bits(16 * 8 * 2, 99);

    const GridBuild a = build_grid(cfg, layout, 8, bits);
    const GridBuild b = build_grid(cfg, layout, 8, bits);
    REQUIRE(a.grid.symbols.size() == b.grid.symbols.size());
    for (std::size_t i = 0; i < a.grid.symbols.size(); ++i) {
        CHECK(a.grid.symbols[i] == b.grid.symbols[i]);
        CHECK(a.grid.roles[i] == b.grid.roles[i]);
    }
}

TEST_CASE("every pilot cell has unit magnitude") {
    const LinkConfig cfg = small_config();
    PilotLayout layout;
    layout.time_period = 3;
    const auto bits = random_bits(16 * 9 * 2, 5);
    const GridBuild built = build_grid(cfg, layout, 9, bits);
    for (int t = 0; t < built.grid.num_symbols; ++t) {
        for (int k = 0; k < built.grid.num_subcarriers; ++k) {
            if (built.grid.role(t, k) == CellRole::Pilot) {
                CHECK(std::abs(built.grid.at(t, k)) == doctest::Approx(1.0).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("pilot values depend on the subcarrier, not the symbol index") {
    // Consecutive soundings must observe the same transmitted pilot vector.
    for (int k = 0; k < 64; ++k) {
        CHECK(pilot_value(42, k) == pilot_value(42, k));
    }
    CHECK(pilot_value(42, 0) != pilot_value(43, 0));
}

TEST_CASE("grid dump has the documented CSV shape") {
    const LinkConfig cfg = small_config(8);
    PilotLayout layout;
    layout.time_period = 2;
    const auto bits = random_bits(8 * 4 * 2, 21);
    const GridBuild built = build_grid(cfg, layout, 4, bits);

    std::ostringstream out;
    dump_grid_csv(built.grid, out);
    const std::string text = out.str();
    CHECK(text.rfind("t,k,role,re,im\n", 0) == 0);
    const long rows = std::count(text.begin(), text.end(), '\n');
    CHECK(rows == 1 + 4 * 8);
    CHECK(text.find("pilot") != std::string::npos);
    CHECK(text.find("data") != std::string::npos);
}

TEST_CASE("link config rejects out-of-range values") {
    LinkConfig cfg;
    cfg.num_subcarriers = 48;  // not a power of two
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = LinkConfig{};
    cfg.ber_threshold = 0.5;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = LinkConfig{};
    cfg.base_pilot_period = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}
