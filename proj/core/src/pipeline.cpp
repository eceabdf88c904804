#include "paf/pipeline.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "paf/io.hpp"

namespace paf {
namespace {

std::filesystem::path with_suffix(const std::filesystem::path& prefix, const char* suffix) {
  return std::filesystem::path(prefix.string() + suffix);
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << contents;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

template <typename Writer>
std::string render(Writer&& writer) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  writer(out);
  return out.str();
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + format_real(values[i]);
  return out;
}

}  // namespace

void RunConfig::validate() const {
  if (input_labels.empty()) throw std::invalid_argument("no input label file given");
  if (dictionary.empty()) throw std::invalid_argument("no dictionary file given");
  if (output_prefix.empty()) throw std::invalid_argument("no output prefix given");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("lambda must lie in [0, 1]");
  for (double w : class_weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("class weights must be positive");
  }
  flow_config().validate();
}

FlowConfig RunConfig::flow_config() const {
  FlowConfig flow;
  flow.step_size = step_size;
  flow.max_steps = max_steps;
  flow.convergence_tol = convergence_tol;
  flow.stall_tol = stall_tol;
  flow.record_every = record_every;
  return flow;
}

Similarity parse_similarity(const std::string& spec, Index dictionary_size) {
  if (spec == "overlap") return OverlapSimilarity{};
  if (spec == "binary") return BinarySimilarity{};
  constexpr std::string_view kCustom = "custom:";
  if (spec.rfind(kCustom, 0) == 0 && spec.size() > kCustom.size()) {
    const std::filesystem::path path = spec.substr(kCustom.size());
    PatchAdjacency table = read_omega(path);
    if (table.size() != dictionary_size) {
      throw ParseError(path.string(), 1, "omega table has " + std::to_string(table.size()) +
                                             " templates, dictionary has " + std::to_string(dictionary_size));
    }
    return CustomSimilarity{std::move(table)};
  }
  throw std::invalid_argument("unknown similarity '" + spec + "' (use overlap, binary or custom:<path>)");
}

std::vector<double> parse_class_weights(const std::string& text) {
  std::vector<double> weights;
  std::istringstream in(text);
  in.imbue(std::locale::classic());
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("invalid class weight '" + item + "'");
    }
    if (used != item.size() || !(value > 0.0) || !std::isfinite(value)) {
      throw std::invalid_argument("invalid class weight '" + item + "'");
    }
    weights.push_back(value);
  }
  if (weights.empty()) throw std::invalid_argument("empty class weight list");
  return weights;
}

RunOutcome run(const RunConfig& config) {
  config.validate();
  const PatchDictionary dictionary = read_dictionary(config.dictionary);
  const Similarity similarity = parse_similarity(config.similarity, dictionary.size());
  const LabelField input = read_label_field(config.input_labels, dictionary.class_count());
  std::vector<double> weights = config.class_weights;
  if (weights.empty()) weights.assign(static_cast<std::size_t>(dictionary.class_count()), 1.0);
  if (static_cast<Index>(weights.size()) != dictionary.class_count()) {
    throw std::invalid_argument("expected " + std::to_string(dictionary.class_count()) +
                                " class weights, got " + std::to_string(weights.size()));
  }

  const GridGraph graph = make_grid(input.height(), input.width());
  PatchAdjacency adjacency = build_adjacency(dictionary, similarity);
  AssignmentField initial = initialize(smooth_labels(input, config.lambda), dictionary, graph, weights,
                                       config.init_boundary);
  const FlowProblem problem(graph, adjacency, std::move(initial));

  FlowResult flow = integrate(problem, config.flow_config());
  LabelField labels = config.seed ? sample_labeling(flow.final_state, dictionary, graph, *config.seed)
                                  : extract_labeling(flow.final_state, dictionary, graph);
  UncertaintyField uncertainty = dictionary.class_count() == 2
                                     ? mean_patch_assignment(flow.final_state, dictionary, graph)
                                     : mean_class_assignment(flow.final_state, dictionary, graph);

  const double final_objective = flow.trace.empty() ? objective(problem, flow.final_state.matrix())
                                                    : flow.trace.back().objective;
  std::ostringstream manifest;
  manifest.imbue(std::locale::classic());
  manifest << "input=" << config.input_labels.string() << '\n'
           << "dictionary=" << config.dictionary.string() << '\n'
           << "similarity=" << config.similarity << '\n'
           << "lambda=" << format_real(config.lambda) << '\n'
           << "class_weights=" << join(weights) << '\n'
           << "step_size=" << format_real(config.step_size) << '\n'
           << "max_steps=" << config.max_steps << '\n'
           << "convergence_tol=" << format_real(config.convergence_tol) << '\n'
           << "stall_tol=" << format_real(config.stall_tol) << '\n'
           << "record_every=" << config.record_every << '\n'
           << "seed=" << (config.seed ? std::to_string(*config.seed) : std::string("none")) << '\n'
           << "integrator=geometric-euler (row-wise exponentiate-and-normalize)\n"
           << "positivity_floor=" << format_real(kPositivityFloor) << '\n'
           << "stopping_rule=mean_max_entry>=convergence_tol | max_abs_step_change<stall_tol | "
              "steps==max_steps\n"
           << "labeling_rule="
           << (config.seed ? "sample template from P(T) per vertex, center class"
                           : "argmax template (ties to lowest index), center class")
           << '\n'
           << "init_boundary=" << to_string(config.init_boundary) << '\n'
           << "patch_boundary=" << to_string(config.init_boundary)
           << " cells for initialization, clipped supports for uncertainty; adjacency from unclipped templates\n"
           << "uncertainty_raw=sum over covering centers of P-weighted template values, divided by |D|\n"
           << "uncertainty_normalization=raw*|D| divided by the number of covering patch centers\n"
           << "grid=" << graph.height() << "x" << graph.width() << " canonical orientation\n"
           << "templates=" << dictionary.size() << '\n'
           << "patch_side=" << dictionary.side() << '\n'
           << "classes=" << dictionary.class_count() << '\n'
           << "steps_taken=" << flow.steps_taken << '\n'
           << "final_time=" << format_real(static_cast<double>(flow.steps_taken) * config.step_size) << '\n'
           << "stop_reason=" << to_string(flow.stop_reason) << '\n'
           << "converged=" << (flow.converged ? "true" : "false") << '\n'
           << "final_objective=" << format_real(final_objective) << '\n'
           << "mean_entropy=" << format_real(flow.convergence_stats.mean_entropy) << '\n'
           << "mean_max_entry=" << format_real(flow.convergence_stats.mean_max_entry) << '\n';

  const std::filesystem::path& prefix = config.output_prefix;
  if (prefix.has_parent_path()) std::filesystem::create_directories(prefix.parent_path());
  const std::vector<std::pair<const char*, std::string>> files = {
      {".labels.pgm", render([&](std::ostream& o) { write_label_pgm(o, labels); })},
      {".labels.csv", render([&](std::ostream& o) { write_label_csv(o, labels); })},
      {".uncertainty.raw.csv", render([&](std::ostream& o) { write_uncertainty_csv(o, uncertainty); })},
      {".uncertainty.pgm", render([&](std::ostream& o) { write_uncertainty_pgm(o, uncertainty); })},
      {".trace.csv", render([&](std::ostream& o) { write_trace_csv(o, flow.trace); })},
      {".dictgraph.txt",
       render([&](std::ostream& o) { write_dictionary_graph(o, export_dictionary_graph(adjacency)); })},
      {".manifest.txt", manifest.str()},
  };
  std::vector<std::filesystem::path> artifacts;
  for (const auto& [suffix, contents] : files) {
    artifacts.push_back(with_suffix(prefix, suffix));
    write_file(artifacts.back(), contents);
  }
  return {std::move(flow), std::move(labels), std::move(uncertainty), std::move(artifacts)};
}

}  // namespace paf
