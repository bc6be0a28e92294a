#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "govsim/experiments.hpp"
#include "govsim/finite.hpp"
#include "support.hpp"

using namespace govsim;
namespace ts = testing_support;

namespace {

ModelParams chain_params(double eps, double bfo = 0.0, double cR = 0.5) {
  ModelParams p;
  p.user_benefit = 4;
  p.creator_benefit = 4;
  p.regulator_funding = 4;
  p.punishment_impact = 1.5;
  p.punishment_cost = 0.5;
  p.safety_cost = 0.5;
  p.regulation_cost = cR;
  p.risk_factor = eps;
  p.capture_reward = bfo;
  return p;
}

std::size_t idx(const char* s, ModelVariant m = ModelVariant::Baseline) {
  for (std::size_t i = 0; i < kProfileCount; ++i) {
    if (label(m, StrategyProfile::from_index(i)) == s) return i;
  }
  ADD_FAILURE() << "no state " << s;
  return 0;
}

}  // namespace

// ---------------------------------------------------------------- imitation and fixation

TEST(Imitation, Examples) {
  EXPECT_EQ(imitation_probability(2.0, 2.0, 5.0), 0.5);
  EXPECT_EQ(imitation_probability(-3.0, 8.0, 0.0), 0.5);
  // 1 / (1 + e^-0.35), evaluated to 20 digits separately.
  EXPECT_NEAR(imitation_probability(0.0, 3.5, 0.1), 0.58661757891733006, 2.3e-16);
  EXPECT_EQ(imitation_probability(0.0, 1e4, 1.0), 1.0);
  EXPECT_GE(imitation_probability(1e4, 0.0, 1.0), 0.0);
  EXPECT_TRUE(std::isfinite(imitation_probability(1e4, 0.0, 1.0)));
}

TEST(Fixation, NeutralIsOneOverZ) {
  for (std::size_t z : {2u, 10u, 100u, 1000u}) {
    EXPECT_EQ(fixation_probability_closed_form(0.0, 0.3, z), 1.0 / static_cast<double>(z));
    EXPECT_EQ(fixation_probability_closed_form(2.5, 0.0, z), 1.0 / static_cast<double>(z));
  }
}

TEST(Fixation, RegulatorEnforcementExample) {
  const auto p = chain_params(0.5);
  FinitePopulationConfig cfg;
  const StrategyProfile context{Action::Cooperate, Action::Defect, Action::Defect};
  const double rho =
      fixation_probability(ModelVariant::Baseline, p, cfg, Role::Regulator, Action::Defect, Action::Cooperate, context);
  const double expected = std::expm1(0.1) / std::expm1(10.0);
  EXPECT_NEAR(rho, expected, 1e-18);
  EXPECT_NEAR(rho, 4.7746e-6, 1e-9);
  EXPECT_NEAR(rho, static_cast<double>(ts::fixation_reference(-1.0, 0.1, 100)), 1e-12 * rho);
}

TEST(Fixation, ClosedFormMatchesProductFormula) {
  for (double beta : {0.0, 0.01, 0.1, 1.0, 10.0}) {
    for (std::size_t z : {10u, 100u}) {
      for (int k = -10; k <= 10; ++k) {
        const double gain = 0.5 * k;
        const double closed = fixation_probability_closed_form(gain, beta, z);
        const double product =
            fixation_probability_product(z, beta, [&](std::size_t) { return std::pair{gain, 0.0}; });
        const double reference = static_cast<double>(ts::fixation_reference(gain, beta, z));
        EXPECT_NEAR(closed, product, 1e-12 * product) << beta << ' ' << z << ' ' << gain;
        EXPECT_NEAR(closed, reference, 1e-12 * reference) << beta << ' ' << z << ' ' << gain;
      }
    }
  }
}

TEST(Fixation, ProductFormulaHandlesComposition) {
  // Frequency-dependent fitness: compare against the long double reference
  // built from the same per-k rates.
  const std::size_t z = 50;
  const double beta = 0.7;
  auto fit = [&](std::size_t k) { return std::pair{0.1 * static_cast<double>(k) - 2.0, 0.5}; };
  long double sum = 1, prod = 1;
  for (std::size_t k = 1; k < z; ++k) {
    const auto [fm, fr] = fit(k);
    prod *= std::exp(-static_cast<long double>(beta) * (fm - fr));
    sum += prod;
  }
  EXPECT_NEAR(fixation_probability_product(z, beta, fit), static_cast<double>(1 / sum), 1e-12 / static_cast<double>(sum));
}

// Kept to beta |gain| Z well inside the double range, where rho cannot underflow.
TEST(Fixation, MonotoneAndBounded) {
  for (double beta : {0.01, 0.1, 1.0}) {
    double prev = 0.0;
    for (int k = -100; k <= 100; ++k) {
      const double rho = fixation_probability_closed_form(0.05 * k, beta, 100);
      EXPECT_GT(rho, prev);
      EXPECT_GT(rho, 0.0);
      EXPECT_LT(rho, 1.0);
      prev = rho;
    }
  }
}

TEST(Fixation, ExtremeSelectionStaysFinite) {
  EXPECT_EQ(fixation_probability_closed_form(-1e4, 1.0, 100), 0.0);
  EXPECT_NEAR(fixation_probability_closed_form(1e4, 1.0, 100), 1.0, 1e-15);
  const double tiny = fixation_probability_closed_form(-5.0, 1.0, 100);
  EXPECT_GT(tiny, 0.0);
  EXPECT_NEAR(tiny, static_cast<double>(ts::fixation_reference(-5.0, 1.0, 100)), 1e-12 * tiny);
}

TEST(Fixation, Preconditions) {
  FinitePopulationConfig cfg;
  EXPECT_THROW(fixation_probability(ModelVariant::Baseline, ModelParams{}, cfg, Role::User, Action::Defect,
                                    Action::Defect, StrategyProfile{}),
               PreconditionError);
  cfg.n_user = 1;
  EXPECT_THROW(validate(cfg), ParameterError);
  cfg = {};
  cfg.beta = -0.1;
  EXPECT_THROW(validate(cfg), ParameterError);
}

// ---------------------------------------------------------------- transition matrix

TEST(Chain, StructuralInvariants) {
  ts::Gen gen(21);
  for (auto m : kAllVariants) {
    for (int i = 0; i < 100; ++i) {
      const auto p = gen.params();
      FinitePopulationConfig cfg;
      cfg.beta = gen.uniform(0, 2);
      cfg.n_user = 2 + static_cast<std::size_t>(gen.uniform(0, 200));
      const auto t = build_transition_matrix(m, p, cfg);
      for (std::size_t a = 0; a < 8; ++a) {
        EXPECT_NEAR(t.probabilities.row(static_cast<Eigen::Index>(a)).sum(), 1.0, 1e-12);
        for (std::size_t b = 0; b < 8; ++b) {
          EXPECT_GE(t(a, b), 0.0);
          const bool neighbours = differing_role(StrategyProfile::from_index(a), StrategyProfile::from_index(b)).has_value();
          if (a != b && !neighbours) {
            EXPECT_EQ(t(a, b), 0.0);
          }
        }
      }
    }
  }
}

TEST(Chain, NeutralEntries) {
  FinitePopulationConfig cfg;
  cfg.beta = 0;
  const auto t = build_transition_matrix(ModelVariant::RegulatorReward, chain_params(0.5, 2), cfg);
  for (std::size_t a = 0; a < 8; ++a) {
    for (std::size_t b = 0; b < 8; ++b) {
      if (a == b) continue;
      const bool n = differing_role(StrategyProfile::from_index(a), StrategyProfile::from_index(b)).has_value();
      EXPECT_EQ(t(a, b), n ? 1.0 / 300.0 : 0.0);
    }
  }
  EXPECT_EQ(t(idx("TCC"), idx("NDD")), 0.0);
}

TEST(Chain, EntriesUseFixationOfTargetStrategy) {
  const auto p = chain_params(0.5);
  FinitePopulationConfig cfg;
  const auto t = build_transition_matrix(ModelVariant::Baseline, p, cfg);
  const std::size_t tcc = idx("TCC"), tcd = idx("TCD");
  // TCC -> TCD: a defecting regulator invades enforcers, gain +c_r.
  EXPECT_NEAR(t(tcc, tcd), fixation_probability_closed_form(0.5, 0.1, 100) / 3, 1e-18);
  EXPECT_NEAR(t(tcd, tcc), fixation_probability_closed_form(-0.5, 0.1, 100) / 3, 1e-18);
  EXPECT_GT(t(tcc, tcd), t(tcd, tcc));

  const auto tr = build_transition_matrix(ModelVariant::Baseline, p, cfg, IndexConvention::Transposed);
  EXPECT_NEAR(tr(tcc, tcd), t(tcd, tcc), 1e-18);
}

TEST(Chain, UnequalPopulationSizes) {
  FinitePopulationConfig cfg;
  cfg.n_user = 10;
  cfg.n_creator = 50;
  cfg.n_regulator = 200;
  const auto p = chain_params(0.5, 1);
  const auto t = build_transition_matrix(ModelVariant::Baseline, p, cfg);
  const std::size_t tcc = idx("TCC");
  EXPECT_NEAR(t(tcc, idx("TCD")), fixation_probability_closed_form(0.5, 0.1, 200) / 3, 1e-18);
  EXPECT_NEAR(t(tcc, idx("TDC")), fixation_probability_closed_form(-1.5 + 0.5, 0.1, 50) / 3, 1e-18);
  EXPECT_NEAR(t(tcc, idx("NCC")), fixation_probability_closed_form(-4.0, 0.1, 10) / 3, 1e-18);
}

TEST(Chain, BaselineRegulatorsDriftTowardsDefection) {
  ts::Gen gen(22);
  for (int i = 0; i < 100; ++i) {
    const auto p = gen.params();
    FinitePopulationConfig cfg;
    cfg.beta = gen.uniform(0, 2);
    const auto t = build_transition_matrix(ModelVariant::Baseline, p, cfg);
    for (std::size_t a = 0; a < 8; ++a) {
      const auto s = StrategyProfile::from_index(a);
      if (s.user != Action::Cooperate || s.regulator != Action::Cooperate) continue;
      const std::size_t b = s.with(Role::Regulator, Action::Defect).index();
      EXPECT_GE(t(a, b), t(b, a));
    }
  }
}

// ---------------------------------------------------------------- stationary distribution

TEST(Stationary, NeutralChainIsUniform) {
  FinitePopulationConfig cfg;
  cfg.beta = 0;
  for (auto m : kAllVariants) {
    const auto d = stationary_distribution(build_transition_matrix(m, chain_params(-0.5, 3), cfg));
    for (double v : d.probabilities) EXPECT_NEAR(v, 0.125, 1e-12);
  }
}

TEST(Stationary, DoublyStochasticIsUniform) {
  ChainMatrix m = ChainMatrix::Zero();
  for (int i = 0; i < 8; ++i) {
    m(i, (i + 1) % 8) = 0.3;
    m(i, (i + 3) % 8) = 0.2;
    m(i, i) = 0.5;
  }
  const auto d = stationary_distribution(m);
  for (double v : d.probabilities) EXPECT_NEAR(v, 0.125, 1e-14);
}

TEST(Stationary, MatchesEliminationReference) {
  ts::Gen gen(23);
  for (auto m : kAllVariants) {
    for (int i = 0; i < 100; ++i) {
      const auto p = gen.params();
      FinitePopulationConfig cfg;
      cfg.beta = gen.uniform(0.001, 0.5);
      const auto t = build_transition_matrix(m, p, cfg);
      const auto d = stationary_distribution(t);
      std::vector<std::vector<long double>> a(8, std::vector<long double>(8));
      for (std::size_t r = 0; r < 8; ++r) {
        for (std::size_t c = 0; c < 8; ++c) a[r][c] = t(r, c);
      }
      const auto ref = ts::gth_stationary(a);
      double sum = 0;
      for (std::size_t k = 0; k < 8; ++k) {
        EXPECT_NEAR(d[k], ref[k], 1e-9);
        EXPECT_GE(d[k], 0.0);
        sum += d[k];
      }
      EXPECT_NEAR(sum, 1.0, 1e-12);
      EXPECT_LE(d.residual, 1e-10);
    }
  }
}

TEST(Stationary, ApproachesUniformAsSelectionVanishes) {
  const auto p = chain_params(0.5, 2);
  double prev = 1.0;
  for (double beta : {1e-1, 1e-2, 1e-3, 1e-4}) {
    FinitePopulationConfig cfg;
    cfg.beta = beta;
    const auto d = stationary_distribution(build_transition_matrix(ModelVariant::RegulatorReward, p, cfg));
    double dev = 0;
    for (double v : d.probabilities) dev = std::max(dev, std::abs(v - 0.125));
    EXPECT_LT(dev, prev);
    if (beta <= 1e-3) {
      EXPECT_LT(dev, 200 * beta);  // O(beta)
    }
    prev = dev;
  }
}

TEST(Stationary, RejectsNonStochasticInput) {
  ChainMatrix m = ChainMatrix::Identity() * 0.9;
  EXPECT_THROW(stationary_distribution(m), PreconditionError);
  EXPECT_THROW(stationary_distribution(ChainMatrix::Identity()), NumericalError);
}

TEST(Stationary, NegativeRiskBaselineFavoursNoTrust) {
  FinitePopulationConfig cfg;
  const auto d = stationary_distribution(build_transition_matrix(ModelVariant::Baseline, chain_params(-0.5), cfg));
  const std::size_t ndd = idx("NDD");
  for (std::size_t i = 0; i < 8; ++i) {
    if (StrategyProfile::from_index(i).user == Action::Cooperate) {
      EXPECT_GT(d[ndd], d[i]);
    }
  }
}

// ---------------------------------------------------------------- dominance graph

TEST(Graph, NeutralChainHasTwelveNeutralPairs) {
  FinitePopulationConfig cfg;
  cfg.beta = 0;
  const auto edges = transition_graph(build_transition_matrix(ModelVariant::Baseline, chain_params(0.5), cfg));
  ASSERT_EQ(edges.size(), 12u);
  for (const auto& e : edges) EXPECT_EQ(e.classification, EdgeClass::Neutral);
}

TEST(Graph, KnownEdges) {
  FinitePopulationConfig cfg;
  auto has = [](const std::vector<DominanceEdge>& es, std::size_t from, std::size_t to) {
    return std::any_of(es.begin(), es.end(), [&](const DominanceEdge& e) {
      return e.from.index() == from && e.to.index() == to && e.classification == EdgeClass::Dominant;
    });
  };
  const auto base = transition_graph(build_transition_matrix(ModelVariant::Baseline, chain_params(0.5), cfg));
  EXPECT_TRUE(has(base, idx("TCC"), idx("TCD")));
  const auto ct = ModelVariant::ConditionalTrust;
  const auto cond = transition_graph(build_transition_matrix(ct, chain_params(0.5, 6), cfg));
  EXPECT_TRUE(has(cond, idx("CTCD", ct), idx("CTCC", ct)));
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& e : cond) {
    EXPECT_GE(e.forward, e.backward);
    pairs.insert(std::minmax(e.from.index(), e.to.index()));
  }
  EXPECT_EQ(pairs.size(), 12u);
}

// ---------------------------------------------------------------- sweeps

TEST(Sweep, GridHelpers) {
  const auto g = linear_grid(0, 8, 33);
  ASSERT_EQ(g.size(), 33u);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_EQ(g[4], 1.0);
  EXPECT_EQ(g.back(), 8.0);
  EXPECT_EQ(linear_grid(2, 5, 1), std::vector<double>{2});
  EXPECT_THROW(linear_grid(0, 1, 0), ConfigError);
}

TEST(Sweep, Validation) {
  SweepSpec s;
  EXPECT_THROW(validate(s), ConfigError);
  s.grid = {1, 2, 2};
  EXPECT_THROW(validate(s), ConfigError);
  s.grid = {3, 2, 1};
  EXPECT_NO_THROW(validate(s));
  s.parameter = "bogus";
  EXPECT_THROW(validate(s), ConfigError);
  s.parameter = "beta";
  s.mode = SweepMode::Replicator;
  EXPECT_THROW(validate(s), ConfigError);
}

TEST(Sweep, BaselineIgnoresCaptureReward) {
  SweepSpec s;
  s.base = chain_params(0.5);
  s.grid = {0, 1, 5};
  const auto r = run_sweep(s);
  for (const auto& row : r.rows) EXPECT_EQ(row.stationary, r.rows[0].stationary);
}

TEST(Sweep, ZeroSelectionRowsAreUniform) {
  SweepSpec s;
  s.variant = ModelVariant::ConditionalTrust;
  s.parameter = "beta";
  s.grid = {0};
  const auto r = run_sweep(s);
  for (double v : r.rows[0].stationary) EXPECT_NEAR(v, 0.125, 1e-12);
}

TEST(Sweep, RegulatorRewardShiftsMassTowardsEnforcement) {
  SweepSpec s;
  s.variant = ModelVariant::RegulatorReward;
  s.base = chain_params(0.5);
  s.grid = linear_grid(0, 8, 33);
  const auto r = run_sweep(s);
  const auto& first = r.rows.front().stationary;
  EXPECT_EQ(static_cast<std::size_t>(std::max_element(first.begin(), first.end()) - first.begin()), idx("TDD"));

  double prev = -1;
  for (const auto& row : r.rows) {
    double enforce = 0;
    for (std::size_t i = 0; i < 8; ++i) {
      if (StrategyProfile::from_index(i).regulator == Action::Cooperate) enforce += row.stationary[i];
    }
    EXPECT_GE(enforce, prev - 1e-12) << "at b_fo=" << row.value;
    prev = enforce;
  }
  const auto& last = r.rows.back().stationary;
  const double mixed = last[idx("TCC")] + last[idx("TCD")] + last[idx("TDC")];
  EXPECT_GT(mixed, 0.5);
}

TEST(Sweep, ThreadedMatchesSerial) {
  SweepSpec s;
  s.variant = ModelVariant::ConditionalTrust;
  s.base = chain_params(0.5);
  s.grid = linear_grid(0, 8, 9);
  const auto serial = sweep_csv(run_sweep(s));
  s.threads = 4;
  EXPECT_EQ(sweep_csv(run_sweep(s)), serial);
}

TEST(Sweep, ErrorsCarryGridValue) {
  SweepSpec s;
  s.parameter = "epsilon";
  s.grid = {0.5, 2.0};
  try {
    run_sweep(s);
    FAIL();
  } catch (const ParameterError& e) {
    EXPECT_NE(std::string(e.what()).find("at epsilon=2"), std::string::npos) << e.what();
    EXPECT_EQ(e.field(), "epsilon");
  }
  s.mode = SweepMode::Replicator;
  s.parameter = "b_u";
  s.grid = {1, 1e5};
  s.replicator.dt = 0.1;
  s.replicator.t_end = 5;
  try {
    run_sweep(s);
    FAIL();
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("at b_u=1e+05"), std::string::npos) << e.what();
  }
}

TEST(Sweep, ReplicatorModeCsv) {
  SweepSpec s;
  s.mode = SweepMode::Replicator;
  s.parameter = "epsilon";
  s.grid = {-0.5, 0.5};
  s.replicator.t_end = 300;
  s.replicator.initial = {0.1, 0.1, 0.1};
  const auto r = run_sweep(s);
  EXPECT_LT(r.rows[0].endpoint.x, 1e-3);
  EXPECT_GT(r.rows[1].endpoint.x, 0.99);
  const auto csv = sweep_csv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "swept_param,value,x,y,z");
}

TEST(Sweep, StationaryCsvHeader) {
  SweepSpec s;
  s.variant = ModelVariant::ConditionalTrust;
  s.grid = {1};
  const auto csv = sweep_csv(run_sweep(s));
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "swept_param,value,state_CTCC,state_CTCD,state_CTDC,state_CTDD,state_NCC,state_NCD,state_NDC,state_NDD");
}

// ---------------------------------------------------------------- presets

TEST(Presets, TrajectoryPanelsMatchCaptions) {
  for (char panel = 'a'; panel <= 'f'; ++panel) {
    const auto p4 = trajectory_preset(std::string("fig4") + panel);
    ASSERT_TRUE(p4);
    EXPECT_EQ(p4->variant, ModelVariant::RegulatorReward);
    EXPECT_EQ(p4->params.user_benefit, 4);
    EXPECT_EQ(p4->params.safety_cost, 0.5);
    EXPECT_EQ(p4->params.punishment_impact, 1.5);
    EXPECT_EQ(p4->params.regulation_cost, 0.5);
    EXPECT_EQ(p4->params.capture_reward - p4->params.punishment_cost, 1.5);
    EXPECT_EQ(p4->params.punishment_cost, 0.5);

    const auto p8 = trajectory_preset(std::string("fig8") + panel);
    ASSERT_TRUE(p8);
    EXPECT_EQ(p8->variant, ModelVariant::ConditionalTrust);
    EXPECT_EQ(p8->params.capture_reward - p8->params.punishment_cost, 5.0);
    EXPECT_EQ(p8->params.safety_cost, 0.5);
    EXPECT_EQ(p8->params.regulation_cost, 0.5);
  }
  EXPECT_EQ(trajectory_preset("fig4a")->start, 0.1);
  EXPECT_EQ(trajectory_preset("fig4b")->start, 0.5);
  EXPECT_EQ(trajectory_preset("fig4b")->params.risk_factor, 0.01);
  EXPECT_EQ(trajectory_preset("fig4d")->params.risk_factor, -0.5);
  EXPECT_EQ(trajectory_preset("fig4f")->params.risk_factor, -1.0);
  EXPECT_EQ(trajectory_preset("fig8a")->params.risk_factor, -1.2);
  EXPECT_EQ(trajectory_preset("fig8c")->params.risk_factor, -0.5);
  EXPECT_EQ(trajectory_preset("fig8e")->params.user_benefit, 1.0);
  EXPECT_EQ(trajectory_preset("fig8e")->params.regulator_funding, 1.0);
  EXPECT_EQ(trajectory_preset("fig8b")->params.regulator_funding, 4.0);
  EXPECT_FALSE(trajectory_preset("fig4g"));
  EXPECT_FALSE(trajectory_preset("fig5"));
}

TEST(Presets, TrajectoryOutcomes) {
  const auto c = run_preset("fig4c");
  ASSERT_FALSE(c.artifacts.empty());
  const auto& csv = c.artifacts.front().content;
  const auto last = csv.substr(csv.rfind('\n', csv.size() - 2) + 1);
  const auto f = split_csv_line(last.substr(0, last.size() - 1));
  ASSERT_EQ(f.size(), 4u);
  EXPECT_EQ(parse_double(f[0]), 2000.0);
  for (int i = 1; i < 4; ++i) EXPECT_LT(parse_double(f[static_cast<std::size_t>(i)]), 1e-3);

  const auto b = run_preset("fig4b");
  EXPECT_NE(b.artifacts.back().content.find("limit_cycle_detected = true"), std::string::npos);
}

TEST(Presets, MissingInputsAreListed) {
  try {
    run_preset("fig5");
    FAIL();
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("epsilon"), std::string::npos);
    EXPECT_NE(msg.find("b_fo grid"), std::string::npos);
  }
  PresetInputs in;
  in.epsilon = 0.5;
  try {
    run_preset("fig7", in);
    FAIL();
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    EXPECT_EQ(msg.find("epsilon"), std::string::npos);
    EXPECT_NE(msg.find("b_fo"), std::string::npos);
    EXPECT_NE(msg.find("c_r"), std::string::npos);
  }
  EXPECT_THROW(run_preset("fig9"), ConfigError);
}

TEST(Presets, StationaryPresetFilesAndManifest) {
  PresetInputs in;
  in.epsilon = 0.5;
  in.capture_grid = linear_grid(0, 8, 5);
  in.svg = true;
  const auto r = run_preset("fig6", in);
  ASSERT_EQ(r.artifacts.size(), 5u);
  EXPECT_EQ(r.artifacts[0].filename,
            "fig6_regulator_reward_b_u4_epsilon0.5_b_p4_c_p0.5_b_r4_c_r5_u1.5_v0.5_b_fo0to8n5_beta0.1_n100.csv");
  EXPECT_TRUE(r.artifacts[1].filename.ends_with(".svg"));
  EXPECT_TRUE(r.artifacts[2].filename.starts_with("fig6_conditional_trust_"));
  const auto& manifest = r.artifacts.back();
  EXPECT_EQ(manifest.filename, "fig6_manifest.txt");
  const auto cfg = parse_config(manifest.content);
  EXPECT_EQ(cfg.params.regulation_cost, 5.0);
  EXPECT_EQ(cfg.params.user_benefit, 4.0);
  EXPECT_EQ(cfg.finite.beta, 0.1);
  EXPECT_EQ(cfg.finite.n_regulator, 100u);
  EXPECT_NE(manifest.content.find("# b_fo grid: 0 2 4 6 8"), std::string::npos);
}

TEST(Presets, GraphPresetReportsConditionalTrustEdge) {
  PresetInputs in;
  in.epsilon = 0.5;
  in.capture_reward = 6;
  in.regulation_cost = 0.5;
  const auto r = run_preset("fig7", in);
  const auto it = std::find_if(r.artifacts.begin(), r.artifacts.end(), [](const Artifact& a) {
    return a.filename.starts_with("fig7_conditional_trust") && a.filename.ends_with("_graph.csv");
  });
  ASSERT_NE(it, r.artifacts.end());
  EXPECT_NE(it->content.find("\nCTCD,CTCC,"), std::string::npos) << it->content;
}

TEST(Presets, Deterministic) {
  PresetInputs in;
  in.t_end = 200;
  const auto a = run_preset("fig8d", in);
  const auto b = run_preset("fig8d", in);
  ASSERT_EQ(a.artifacts.size(), b.artifacts.size());
  for (std::size_t i = 0; i < a.artifacts.size(); ++i) {
    EXPECT_EQ(a.artifacts[i].filename, b.artifacts[i].filename);
    EXPECT_EQ(a.artifacts[i].content, b.artifacts[i].content);
  }
}
