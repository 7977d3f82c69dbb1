// Command-line front end: load a network document, run a solver, emit
// machine-readable JSON. Human-oriented notes go to stderr; stdout carries
// only the result document so runs are scriptable and byte-reproducible.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "tempoflow/io.hpp"
#include "tempoflow/oracle.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolations = 1;
constexpr int kExitError = 2;
constexpr int kExitInfeasible = 3;

using tempoflow::OrderedJson;
using tempoflow::Rational;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw tempoflow::ParseError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void emit(const OrderedJson& doc, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::ofstream out(output_path);
    if (!out) throw tempoflow::ParseError("cannot write '" + output_path + "'");
    out << doc.dump(2) << "\n";
  }
}

std::map<std::string, Rational> parse_supply_override(const std::string& text) {
  std::map<std::string, Rational> m;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw tempoflow::ParseError("supplies must look like node=value,node=value");
    m[item.substr(0, eq)] = Rational::parse(item.substr(eq + 1));
  }
  return m;
}

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> names;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) names.push_back(item);
  return names;
}

tempoflow::SupplyVector supplies_for(const tempoflow::Network& net,
                                     const std::string& override_text) {
  if (!override_text.empty())
    return tempoflow::SupplyVector::from_map(net, parse_supply_override(override_text));
  if (net.file_supplies().empty())
    throw tempoflow::ParseError("no supplies: add a \"supplies\" field or pass --supplies");
  return tempoflow::SupplyVector::from_network_file(net);
}

struct Options {
  std::string input;
  std::string horizon = "0";
  std::string order;
  std::string supplies;
  std::string schedule;
  std::string precision = "1/1000";
  std::string output;
  int max_iterations = tempoflow::kDefaultIterationCap;
};

int run(const std::string& command, const Options& opt) {
  auto net = std::make_shared<tempoflow::Network>(tempoflow::Network::parse(read_file(opt.input)));
  OrderedJson doc;
  doc["command"] = command;

  if (command == "maxflow") {
    Rational horizon = Rational::parse(opt.horizon);
    auto result = tempoflow::max_flow_over_time(net, horizon);
    doc["horizon"] = horizon.str();
    doc["value"] = result.value.str();
    doc["cut"] = tempoflow::cut_to_json(result.cut, *net, horizon);
    doc["chains"] = tempoflow::chains_to_json(result.decomposition, false);
    doc["schedule"] = tempoflow::schedule_to_json(result.flow);
    emit(doc, opt.output);
    return kExitOk;
  }

  if (command == "earliest") {
    std::optional<Rational> horizon;
    if (opt.horizon != "inf") horizon = Rational::parse(opt.horizon);
    auto result = tempoflow::earliest_arrival(net, horizon, opt.max_iterations);
    doc["horizon"] = horizon ? horizon->str() : "inf";
    doc["iterations"] = result.iterations;
    doc["arrivals"] = tempoflow::pattern_to_json(result.pattern);
    doc["chains"] = tempoflow::chains_to_json(result.decomposition, false);
    doc["schedule"] = tempoflow::schedule_to_json(result.flow);
    emit(doc, opt.output);
    return kExitOk;
  }

  if (command == "lexmax") {
    Rational horizon = Rational::parse(opt.horizon);
    if (opt.order.empty()) throw tempoflow::ParseError("lexmax needs --order");
    auto order = tempoflow::LexOrder::from_names(*net, split_names(opt.order));
    auto result = tempoflow::lex_max(net, horizon, order);
    doc["horizon"] = horizon.str();
    doc["order"] = OrderedJson::array();
    for (int r : order.terminals) doc["order"].push_back(net->node_name(r));
    doc["nets"] = OrderedJson::object();
    for (int i = 0; i < net->terminal_count(); ++i)
      doc["nets"][net->node_name(net->terminals()[i])] = result.net_outflow[i].str();
    // Row i holds X_i: the k-i highest priorities, paired with o(X_i).
    doc["o_prefix"] = OrderedJson::array();
    std::size_t k = order.terminals.size();
    for (std::size_t i = 0; i <= k; ++i) {
      OrderedJson row;
      row["set"] = OrderedJson::array();
      for (std::size_t j = 0; j < k - i; ++j)
        row["set"].push_back(net->node_name(order.terminals[j]));
      row["value"] = result.prefix_values[i].str();
      doc["o_prefix"].push_back(std::move(row));
    }
    doc["chains"] = tempoflow::chains_to_json(result.decomposition, true);
    doc["schedule"] = tempoflow::schedule_to_json(result.flow);
    emit(doc, opt.output);
    return kExitOk;
  }

  if (command == "feasible") {
    Rational horizon = Rational::parse(opt.horizon);
    tempoflow::SupplyVector b = supplies_for(*net, opt.supplies);
    tempoflow::OValueOracle oracle(net, horizon);
    auto cert = tempoflow::feasible(oracle, b);
    doc["horizon"] = horizon.str();
    doc.update(tempoflow::certificate_to_json(cert, *net));
    emit(doc, opt.output);
    return kExitOk;
  }

  if (command == "transship") {
    Rational horizon = Rational::parse(opt.horizon);
    tempoflow::SupplyVector b = supplies_for(*net, opt.supplies);
    try {
      auto result = tempoflow::transshipment(net, horizon, b);
      doc["horizon"] = horizon.str();
      doc.update(tempoflow::certificate_to_json(result.certificate, *net));
      doc["nets"] = OrderedJson::object();
      for (int i = 0; i < net->terminal_count(); ++i)
        doc["nets"][net->node_name(net->terminals()[i])] =
            result.flow.net_outflow(net->terminals()[i]).str();
      doc["schedule"] = tempoflow::schedule_to_json(result.flow);
      emit(doc, opt.output);
      return kExitOk;
    } catch (const tempoflow::InfeasibleError& e) {
      doc["horizon"] = horizon.str();
      doc.update(tempoflow::certificate_to_json(e.certificate, *net));
      emit(doc, opt.output);
      std::cerr << "infeasible: " << e.what() << "\n";
      return kExitInfeasible;
    }
  }

  if (command == "quickest") {
    tempoflow::SupplyVector b = supplies_for(*net, opt.supplies);
    Rational precision = Rational::parse(opt.precision);
    try {
      Rational horizon = tempoflow::quickest_horizon(net, b, precision);
      auto result = tempoflow::transshipment(net, horizon, b);
      doc["precision"] = precision.str();
      doc["horizon"] = horizon.str();
      doc["schedule"] = tempoflow::schedule_to_json(result.flow);
      emit(doc, opt.output);
      return kExitOk;
    } catch (const tempoflow::InfeasibleError& e) {
      doc["precision"] = precision.str();
      doc.update(tempoflow::certificate_to_json(e.certificate, *net));
      emit(doc, opt.output);
      std::cerr << "infeasible: " << e.what() << "\n";
      return kExitInfeasible;
    }
  }

  if (command == "verify") {
    if (opt.schedule.empty()) throw tempoflow::ParseError("verify needs --schedule");
    OrderedJson sched = OrderedJson::parse(read_file(opt.schedule));
    auto flow = tempoflow::schedule_from_json(net, sched);
    auto report = tempoflow::verify(flow);
    doc["ok"] = report.ok();
    doc["violations"] = tempoflow::violations_to_json(report, *net);
    emit(doc, opt.output);
    return report.ok() ? kExitOk : kExitViolations;
  }

  if (command == "oracle") {
    Rational horizon = Rational::parse(opt.horizon);
    if (!horizon.is_integer())
      throw tempoflow::ParseError("oracle needs an integral horizon");
    for (const tempoflow::Arc& a : net->arcs())
      if (!a.transit.is_integer())
        throw tempoflow::ParseError("oracle needs integral transit times");
    if (net->terminal_count() > 16)
      throw tempoflow::ParseError("oracle table limited to 16 terminals");
    long long t = static_cast<long long>(horizon.numerator());
    doc["horizon"] = horizon.str();
    doc["o"] = OrderedJson::array();
    for (unsigned mask = 0; mask < (1u << net->terminal_count()); ++mask) {
      OrderedJson row;
      row["set"] = OrderedJson::array();
      for (int i = 0; i < net->terminal_count(); ++i)
        if (mask & (1u << i)) row["set"].push_back(net->node_name(net->terminals()[i]));
      row["value"] = tempoflow::oracle_o_value(*net, t, mask).str();
      doc["o"].push_back(std::move(row));
    }
    emit(doc, opt.output);
    return kExitOk;
  }

  throw tempoflow::ParseError("unknown command '" + command + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flows over time with exact rational arithmetic"};
  app.require_subcommand(1);

  Options opt;
  std::vector<CLI::App*> subs;
  for (const char* name : {"maxflow", "earliest", "lexmax", "feasible", "transship",
                           "quickest", "verify", "oracle"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("input", opt.input, "network document (JSON)")->required();
    sub->add_option("--horizon", opt.horizon, "time horizon (rational; earliest accepts 'inf')");
    sub->add_option("--order", opt.order, "terminal priority order, highest first (a,b,c)");
    sub->add_option("--supplies", opt.supplies, "supply override (node=value,...)");
    sub->add_option("--schedule", opt.schedule, "schedule document to verify");
    sub->add_option("--precision", opt.precision, "bisection precision for quickest");
    sub->add_option("--max-iterations", opt.max_iterations, "iteration cap for cycle canceling");
    sub->add_option("--output", opt.output, "write the result document here instead of stdout");
    subs.push_back(sub);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    for (CLI::App* sub : subs)
      if (sub->parsed()) return run(sub->get_name(), opt);
    std::cerr << "error: no command\n";
    return kExitError;
  } catch (const tempoflow::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
