#include <gtest/gtest.h>

#include "lpg/cli/run.hpp"

using namespace lpg;
using namespace lpg::cli;

namespace {

const char* kMinimal = R"(
[groupoid.one]
kind = unit
points = 1

[task.1]
command = core
groupoid = one
p = 3
)";

RunOptions serial_opts() {
  RunOptions o;
  o.policy = ExecutionPolicy::Serial;
  return o;
}

std::string catalog_path() { return std::string(LPG_SOURCE_DIR) + "/specs/catalog.spec"; }

}  // namespace

TEST(Spec, MinimalParsesAndPasses) {
  const SpecFile s = parse_spec_text(kMinimal);
  ASSERT_EQ(s.tasks.size(), 1u);
  EXPECT_EQ(s.tasks[0].command, "core");
  ASSERT_EQ(s.tasks[0].p.size(), 1u);
  const Report r = run(s, serial_opts());
  ASSERT_EQ(r.tasks.size(), 1u);
  EXPECT_EQ(r.tasks[0].status, Status::Pass);
  EXPECT_EQ(r.tasks[0].results["p=3"]["dimension"], 1);
}

TEST(Spec, UndefinedReferenceNamesItWithPosition) {
  const std::string text = "[task.1]\ncommand = core\ngroup = nope\np = 1\n";
  try {
    parse_spec_text(text, "bad.spec");
    FAIL() << "expected SpecError";
  } catch (const SpecError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("nope"), std::string::npos) << msg;
    EXPECT_NE(msg.find("bad.spec:3:"), std::string::npos) << msg;
    EXPECT_EQ(e.line(), 3);
  }
}

TEST(Spec, ReferencesMustBeEarlier) {
  const std::string text = "[groupoid.g]\nkind = transformation\naction = a\n\n[action.a]\nkind = rotation\norder = 2\npoints = 2\n";
  EXPECT_THROW(parse_spec_text(text), SpecError);
}

TEST(Spec, StructuralErrors) {
  EXPECT_THROW(parse_spec_text("[group.a]\nkind = cyclic\norder = 2\n[group.a]\nkind = cyclic\norder = 3\n"), SpecError);
  EXPECT_THROW(parse_spec_text("[group.a]\nkind = cyclic\norder = 2\ncolour = red\n"), SpecError);
  EXPECT_THROW(parse_spec_text("[group.a]\nkind = cyclic\n"), SpecError);
  EXPECT_THROW(parse_spec_text("[widget.a]\nkind = cyclic\n"), SpecError);
  EXPECT_THROW(parse_spec_text("kind = cyclic\n"), SpecError);
  EXPECT_THROW(parse_spec_text("[task.t]\ncommand = frobnicate\n"), SpecError);
  EXPECT_THROW(parse_spec_text("[group.a]\nkind = table\ntable = 0, 1; 0, 1\n"), SpecError);
  EXPECT_THROW(parse_spec_text("[groupoid.g]\nkind = pair\npoints = 2\n[task.t]\ncommand = core\ngroupoid = g\np = 2/0\n"),
               SpecError);
}

TEST(Spec, TableHelpers) {
  const auto t = split_table("1, 2; 3 4");
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[1][1], "4");
  const auto ms = parse_matrices("1, 0; 0, 1 | 0, 1; 1, 0");
  ASSERT_EQ(ms.size(), 2u);
  EXPECT_EQ(ms[1].rows(), 2u);
  EXPECT_EQ(split_list("a, b ,c").size(), 3u);
  EXPECT_EQ(split_list(" a ")[0], "a");
}

TEST(Spec, EmptyTaskListGivesEmptyReport) {
  const SpecFile s = parse_spec_text("# nothing\n[group.z2]\nkind = cyclic\norder = 2\n");
  const Report r = run(s, serial_opts());
  EXPECT_TRUE(r.tasks.empty());
  EXPECT_FALSE(r.failed());
  EXPECT_NE(render_text(r, false).find("0 pass, 0 fail"), std::string::npos);
}

TEST(Run, CatalogAllPass) {
  const SpecFile s = parse_spec(catalog_path());
  EXPECT_GE(s.tasks.size(), 20u);
  const Report r = run(s, RunOptions{});
  for (const auto& t : r.tasks) EXPECT_EQ(t.status, Status::Pass) << t.id << "\n" << render_text(Report{r.spec, r.seed, {t}}, false);
  EXPECT_FALSE(r.failed());
}

TEST(Run, HilbertWeylRejected) {
  const SpecFile s = parse_spec_text("[groupoid.g]\nkind = pair\npoints = 2\n[task.w]\ncommand = weyl\ngroupoid = g\np = 2\n");
  const Report r = run(s, serial_opts());
  ASSERT_EQ(r.tasks.size(), 1u);
  EXPECT_EQ(r.tasks[0].status, Status::Fail);
  EXPECT_NE(render_text(r, false).find("p != 2"), std::string::npos);
}

TEST(Run, MutatedLeavittFails) {
  const SpecFile s = parse_spec_text("[task.m]\ncommand = leavitt\nkind = covariant\nn = 2\nmutate = b 1 0 0\n");
  const Report r = run(s, serial_opts());
  EXPECT_EQ(r.tasks[0].status, Status::Fail);
  EXPECT_NE(render_text(r, false).find("b^3 = I"), std::string::npos);

  const SpecFile ok = parse_spec_text("[task.m]\ncommand = leavitt\nkind = absorption\nk = 3\n");
  EXPECT_EQ(run(ok, serial_opts()).tasks[0].status, Status::Pass);
}

TEST(Run, WrongExpectationFails) {
  const SpecFile s = parse_spec_text(
      "[groupoid.g]\nkind = pair\npoints = 2\n[task.v]\ncommand = validate\ngroupoid = g\nexpect = not-principal\n");
  EXPECT_EQ(run(s, serial_opts()).tasks[0].status, Status::Fail);
}

TEST(Run, GuardExceededIsInconclusive) {
  const SpecFile s = parse_spec_text("[groupoid.g]\nkind = pair\npoints = 4\n[task.w]\ncommand = weyl\ngroupoid = g\np = 3\nguard = 5\n");
  EXPECT_EQ(run(s, serial_opts()).tasks[0].status, Status::Inconclusive);
}

TEST(Report, JsonRoundTripAndDeterminism) {
  const SpecFile s = parse_spec(catalog_path());
  const Report a = run(s, RunOptions{});
  const Report b = run(s, serial_opts());
  EXPECT_EQ(render_json(a), render_json(b));
  const Report back = report_from_json(to_json(a));
  EXPECT_TRUE(back == a);
  EXPECT_EQ(render_json(back), render_json(a));
  EXPECT_EQ(render_text(back, false), render_text(a, false));

  RunOptions other = serial_opts();
  other.seed = 99;
  EXPECT_NE(render_json(run(s, other)), render_json(a));
}

TEST(Report, TimingsOnlyOnRequest) {
  const Report r = run(parse_spec_text(kMinimal), serial_opts());
  EXPECT_EQ(render_text(r, false).find("time:"), std::string::npos);
  EXPECT_NE(render_text(r, true).find("time:"), std::string::npos);
  EXPECT_EQ(render_json(r).find("seconds"), std::string::npos);
}

TEST(Report, StatusNames) {
  EXPECT_EQ(status_name(Status::Inconclusive), "inconclusive-interval");
  EXPECT_EQ(parse_status("pass"), Status::Pass);
  EXPECT_THROW(parse_status("maybe"), std::invalid_argument);
}

TEST(Tolerances, Parsing) {
  Tolerances t;
  t.set("interval=0.5");
  EXPECT_DOUBLE_EQ(t.interval, 0.5);
  t.set("sandwich=1e-6");
  EXPECT_DOUBLE_EQ(t.sandwich, 1e-6);
  EXPECT_THROW(t.set("foo=1"), std::invalid_argument);
  EXPECT_THROW(t.set("interval"), std::invalid_argument);
  EXPECT_THROW(t.set("interval=abc"), std::invalid_argument);
  EXPECT_THROW(t.set("interval=-1"), std::invalid_argument);
}
