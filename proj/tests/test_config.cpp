#include "dfsqed/config.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace dfsqed;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(ParseConfig, EmptyUsesDefaults) {
    const ExperimentConfig c = parse_config("", "thermal");
    ExperimentConfig d;
    d.experiment = "thermal";
    EXPECT_TRUE(c == d);
    EXPECT_EQ(c.n_max, 8);
    EXPECT_DOUBLE_EQ(c.G, kDefaultG);
    const SystemParams p = c.system();
    EXPECT_DOUBLE_EQ(p.delta, 10.0 * kDefaultG);
    EXPECT_DOUBLE_EQ(2.0 * (p.omega - p.omega_a), p.delta);
}

TEST(ParseConfig, NegativeCouplingNamesKey) {
    try {
        parse_config("experiment = durations\nG = -1\n");
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.key(), "G");
        EXPECT_EQ(e.line(), 2);
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
    }
}

TEST(ParseConfig, Errors) {
    EXPECT_THROW(parse_config("experiment = bell\nbogus = 1\n"), ConfigError);
    EXPECT_THROW(parse_config("experiment = bell\nseed = 1\nseed = 2\n"), ConfigError);
    EXPECT_THROW(parse_config("experiment = bell\nseed\n"), ConfigError);
    EXPECT_THROW(parse_config("experiment = bell\nG = abc\n"), ConfigError);
    EXPECT_THROW(parse_config("experiment = bell\nG = 1e400\n"), ConfigError);
    EXPECT_THROW(parse_config("experiment = nope\n"), ConfigError);
    EXPECT_THROW(parse_config("G = 1\n"), ConfigError);
    EXPECT_THROW(parse_config("experiment = bell\nn_max = 2\n"), ConfigError);
    EXPECT_THROW(parse_config("experiment = bell\ndelta = 0\n"), ConfigError);
    EXPECT_THROW(parse_config("experiment = bell\nnbar_grid = 0, , 1\n"), ConfigError);
    EXPECT_THROW(parse_config("experiment = bell\nformat = xml\n"), ConfigError);
    EXPECT_THROW(parse_config("experiment = bell\nomega_a = 0\nomega = 5\ndelta = 3\n"), ConfigError);
}

TEST(ParseConfig, CommentsAndWhitespace) {
    const ExperimentConfig c = parse_config("  # header\n experiment=teleport   # trailing\n\n theta =\t0.5\n");
    EXPECT_EQ(c.experiment, "teleport");
    EXPECT_DOUBLE_EQ(c.theta, 0.5);
}

TEST(ParseConfig, HintDoesNotOverride) {
    EXPECT_EQ(parse_config("experiment = bell\n", "thermal").experiment, "bell");
}

TEST(ParseConfig, Lists) {
    const ExperimentConfig c = parse_config("experiment = validate-effective\ndelta_ratios = 10, 20,40\n");
    ASSERT_EQ(c.delta_ratios.size(), 3u);
    EXPECT_EQ(c.delta_ratios[2], 40.0);
}

TEST(SerializeConfig, RoundTripsSampleConfigs) {
    for (const char* name : {"teleport", "validate-effective", "stagger-sweep", "thermal", "bell", "durations"}) {
        const std::string text = read_file(std::string(DFSQED_CONFIG_DIR) + "/" + name + ".conf");
        ASSERT_FALSE(text.empty()) << name;
        const ExperimentConfig c = parse_config(text);
        const std::string once = serialize_config(c);
        const ExperimentConfig back = parse_config(once);
        EXPECT_TRUE(back == c) << name;
        EXPECT_EQ(serialize_config(back), once) << name;
    }
}

TEST(SerializeConfig, ExactDoubles) {
    ExperimentConfig c;
    c.experiment = "teleport";
    c.theta = 0.1 + 0.2;
    c.dephase_phi = 1.0 / 3.0;
    const ExperimentConfig back = parse_config(serialize_config(c));
    EXPECT_EQ(back.theta, c.theta);
    EXPECT_EQ(back.dephase_phi, c.dephase_phi);
}

TEST(ExperimentConfigType, StaggerFractionsDefaultGrid) {
    ExperimentConfig c;
    c.experiment = "stagger-sweep";
    const auto fr = c.stagger_fractions();
    ASSERT_EQ(fr.size(), 50u);
    EXPECT_EQ(fr.front(), 0.0);
    EXPECT_DOUBLE_EQ(fr.back(), 0.25);
}
