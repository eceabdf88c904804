#include <gtest/gtest.h>

#include <sstream>

#include "paf/io.hpp"
#include "paf/scenario.hpp"
#include "support/generators.hpp"

namespace paf {
namespace {

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e.what();
  }
  return "no error";
}

TEST(FormatReal, RoundTrips) {
  testing::Rng rng(71);
  for (int trial = 0; trial < 200; ++trial) {
    const double x = rng.real(-1e6, 1e6) * std::pow(10.0, static_cast<double>(rng.index(-20, 20)));
    EXPECT_EQ(std::stod(format_real(x)), x);
  }
  EXPECT_EQ(format_real(0.5), "0.5");
}

TEST(Dictionary, RoundTrip) {
  testing::Rng rng(72);
  const PatchDictionary dict = testing::random_dictionary(rng, 3, 5, 3);
  std::stringstream s;
  write_dictionary(s, dict);
  const PatchDictionary back = parse_dictionary(s, "mem");
  EXPECT_EQ(back.templates(), dict.templates());
  EXPECT_EQ(back.class_count(), 3);
}

TEST(Dictionary, ErrorsNameTheLine) {
  const auto parse = [](const std::string& text) {
    return error_of([&] {
      std::istringstream in(text);
      parse_dictionary(in, "d.txt");
    });
  };
  EXPECT_EQ(parse("patchdict v2 3 2 1\n"), "d.txt:1: expected header 'patchdict v1 <k> <c> <|D|>'");
  EXPECT_EQ(parse("patchdict v1 2 2 1\n"), "d.txt:1: patch side must be odd and >= 1");
  EXPECT_EQ(parse("patchdict v1 1 2 1\ntemplate 0\n2\n"), "d.txt:3: class id 2 is not below class count 2");
  EXPECT_EQ(parse("patchdict v1 3 2 1\ntemplate 0\n0 0 0\n0 0\n"),
            "d.txt:4: template row needs 3 class ids, got 2");
  EXPECT_EQ(parse("patchdict v1 1 2 2\ntemplate 0\n0\n"), "d.txt:3: unexpected end of file, expected template line");
  EXPECT_EQ(parse("patchdict v1 1 2 1\ntemplate 1\n0\n"), "d.txt:2: expected template index 0");
  EXPECT_EQ(parse("patchdict v1 1 2 1\ntemplate 0\nx\n"), "d.txt:3: invalid class id");
  EXPECT_EQ(error_of([] { read_dictionary("/nonexistent/dict.txt"); }), "/nonexistent/dict.txt: cannot open file");
}

TEST(Omega, RoundTripAndErrors) {
  testing::Rng rng(73);
  const PatchAdjacency adj = testing::random_adjacency(rng, 4);
  std::stringstream s;
  write_omega(s, adj);
  const PatchAdjacency back = parse_omega(s, "mem");
  EXPECT_EQ(back.omega_h, adj.omega_h);
  EXPECT_EQ(back.omega_v, adj.omega_v);

  std::istringstream bad("omega v1 1\n0.5\n-1\n");
  EXPECT_NE(error_of([&] { parse_omega(bad, "o.txt"); }).find("o.txt:3"), std::string::npos);
}

TEST(Labels, PgmAndCsvRoundTrip) {
  testing::Rng rng(74);
  for (Index classes : {2, 7, 300}) {
    const LabelField labels = testing::random_labels(rng, 5, 8, classes);
    std::stringstream pgm;
    write_label_pgm(pgm, labels);
    EXPECT_EQ(parse_label_pgm(pgm, "mem", classes), labels);
    std::stringstream csv;
    write_label_csv(csv, labels);
    EXPECT_EQ(parse_label_csv(csv, "mem", classes), labels);
  }
}

TEST(Labels, PlainPgmWithComments) {
  std::istringstream in("P2\n# made by hand\n3 2\n# maxval next\n1\n0 1 0\n1 1 0\n");
  const LabelField labels = parse_label_pgm(in, "mem", 2);
  EXPECT_EQ(labels, LabelField(2, 3, {0, 1, 0, 1, 1, 0}, 2));
}

TEST(Labels, Errors) {
  const auto pgm = [](const std::string& text, Index classes = 2) {
    return error_of([&] {
      std::istringstream in(text);
      parse_label_pgm(in, "l.pgm", classes);
    });
  };
  EXPECT_EQ(pgm("P3\n1 1\n1\n0\n"), "l.pgm:1: expected PGM magic P2 or P5");
  EXPECT_EQ(pgm("P2\n2 1\n3\n0 3\n"), "l.pgm:4: class id 3 is not below class count 2");
  EXPECT_NE(pgm("P2\n2 2\n1\n0 1\n1\n").find("l.pgm:"), std::string::npos);

  const auto csv = [](const std::string& text) {
    return error_of([&] {
      std::istringstream in(text);
      parse_label_csv(in, "l.csv", 2);
    });
  };
  EXPECT_EQ(csv("0,1\n0\n"), "l.csv:2: row has 1 values, expected 2");
  EXPECT_EQ(csv("0,1\n0,a\n"), "l.csv:2: invalid class id");
  EXPECT_EQ(csv(""), "l.csv: empty label file");
  EXPECT_EQ(error_of([] { read_label_field("labels.png", 2); }),
            "labels.png: unsupported label file extension (use .pgm or .csv)");
}

TEST(Uncertainty, Formats) {
  UncertaintyField u;
  u.height = 1;
  u.width = 2;
  u.raw = Matrix(2, 1);
  u.raw << 0.25, 1.0 / 3.0;
  u.normalized = Matrix(2, 1);
  u.normalized << 0.0, 1.0;
  std::ostringstream csv;
  write_uncertainty_csv(csv, u);
  EXPECT_EQ(csv.str(), "0.25," + format_real(1.0 / 3.0) + "\n");
  std::ostringstream pgm;
  write_uncertainty_pgm(pgm, u);
  EXPECT_EQ(pgm.str(), std::string("P5\n2 1\n255\n") + '\0' + '\xff');
}

TEST(Trace, Header) {
  std::ostringstream out;
  write_trace_csv(out, {{0, 0.0, 1.5, 0.25, 0.5}});
  EXPECT_EQ(out.str(), "step,time,objective,mean_entropy,mean_max_entry\n0,0,1.5,0.25,0.5\n");
}

TEST(DictionaryGraph, TextFormat) {
  std::ostringstream out;
  Matrix h(2, 2);
  h << 1, 0, 0.5, 0;
  write_dictionary_graph(out, export_dictionary_graph({h, Matrix::Identity(2, 2)}));
  EXPECT_EQ(out.str(), "dictgraph 2\nh 0 0 1\nh 1 0 0.5\nv 0 0 1\nv 1 1 1\n");
}

}  // namespace
}  // namespace paf
