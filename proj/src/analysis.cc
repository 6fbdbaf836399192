// Copyright 2026 The reteval Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "reteval/analysis.h"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include "reteval/errors.h"

namespace reteval {

std::string_view to_string(FailureClass c) {
  switch (c) {
    case FailureClass::None: return "none";
    case FailureClass::ConventionalMetricFailure: return "conventional_metric_failure";
    case FailureClass::RetEvalFailure: return "reteval_failure";
    case FailureClass::Both: return "both";
  }
  return "?";
}

std::string_view to_string(Diagnosis d) {
  switch (d) {
    case Diagnosis::None: return "none";
    case Diagnosis::MissButCorrect: return "miss_but_correct";
    case Diagnosis::HitButWrong: return "hit_but_wrong";
  }
  return "?";
}

FailureClass classify_failure(bool recall_hit, bool llm_reteval, bool end_to_end) {
  const bool conventional = recall_hit != end_to_end;
  const bool reteval = llm_reteval != end_to_end;
  if (conventional && reteval) return FailureClass::Both;
  if (conventional) return FailureClass::ConventionalMetricFailure;
  if (reteval) return FailureClass::RetEvalFailure;
  return FailureClass::None;
}

Diagnosis diagnose(bool recall_hit, bool end_to_end) {
  if (!recall_hit && end_to_end) return Diagnosis::MissButCorrect;
  if (recall_hit && !end_to_end) return Diagnosis::HitButWrong;
  return Diagnosis::None;
}

QuestionEvalRecord make_record(std::string question_id, std::size_t k,
                               std::span<const std::string> ranked,
                               std::span<const std::string> gold, bool llm_reteval,
                               bool end_to_end) {
  QuestionEvalRecord r;
  r.question_id = std::move(question_id);
  r.k = k;
  r.scores = rank_agnostic_at_k(ranked, gold, k);
  r.recall_hit = r.scores.recall > 0.0;
  const auto top = ranked.subspan(0, std::min(k, ranked.size()));
  r.reciprocal_rank = reciprocal_rank(top, gold);
  r.ndcg = ndcg_at_k(ranked, gold, k);
  r.llm_reteval = llm_reteval;
  r.end_to_end = end_to_end;
  r.failure_class = classify_failure(r.recall_hit, llm_reteval, end_to_end);
  r.diagnosis = diagnose(r.recall_hit, end_to_end);
  return r;
}

std::vector<std::string> semi_gold_references(std::span<const GeneratedAnswer> semi_gold) {
  std::vector<std::string> refs;
  std::unordered_set<std::string> seen;
  for (const auto& a : semi_gold) {
    if (a.failed()) continue;
    if (seen.insert(a.text).second) refs.push_back(a.text);
  }
  return refs;
}

Verdict reteval_verdict(const Judge& judge, std::string_view question,
                        const GeneratedAnswer& rag_answer,
                        std::span<const GeneratedAnswer> semi_gold, ReferenceMode mode) {
  const auto refs = semi_gold_references(semi_gold);
  if (refs.empty()) throw PreconditionError("llm_reteval_verdict: no semi-gold answers");
  if (mode == ReferenceMode::MultiReference) {
    return judge.decide(rag_answer.question_id, question, refs, rag_answer.text);
  }
  // One call per reference; the first Yes wins, otherwise the last No is kept.
  Verdict last;
  for (const auto& ref : refs) {
    const std::vector<std::string> one{ref};
    last = judge.decide(rag_answer.question_id, question, one, rag_answer.text);
    if (last.decision) break;
  }
  last.references = refs;
  return last;
}

std::vector<QuestionEvalRecord> refine(std::span<const QuestionEvalRecord> records) {
  std::vector<QuestionEvalRecord> out;
  for (const auto& r : records) {
    if (r.failure_class == FailureClass::ConventionalMetricFailure ||
        r.failure_class == FailureClass::Both) {
      continue;
    }
    out.push_back(r);
  }
  return out;
}

namespace {

CorrelationResult correlation_of(std::span<const QuestionEvalRecord> records, Subset subset) {
  std::vector<double> reteval, hit;
  for (const auto& r : records) {
    reteval.push_back(r.llm_reteval ? 1.0 : 0.0);
    hit.push_back(r.recall_hit ? 1.0 : 0.0);
  }
  return correlate(reteval, hit, subset);
}

json to_json(const CorrelationResult& c) {
  json j = {{"n", c.n}};
  if (c.rho) {
    j["rho"] = *c.rho;
  } else {
    j["rho"] = nullptr;
    j["undefined"] = c.undefined_reason;
  }
  return j;
}

}  // namespace

EvalReport build_report(std::span<const QuestionEvalRecord> records,
                        std::span<const std::size_t> k_values) {
  std::map<std::size_t, std::vector<QuestionEvalRecord>> by_k;
  for (auto k : k_values) {
    if (!by_k.emplace(k, std::vector<QuestionEvalRecord>{}).second) {
      throw PreconditionError("build_report: duplicate k " + std::to_string(k));
    }
  }
  std::set<std::string> questions;
  std::set<std::pair<std::string, std::size_t>> pairs;
  for (const auto& r : records) {
    auto it = by_k.find(r.k);
    if (it == by_k.end()) {
      throw PreconditionError("build_report: record for unexpected k " + std::to_string(r.k));
    }
    if (!pairs.emplace(r.question_id, r.k).second) {
      throw PreconditionError("build_report: duplicate record for (" + r.question_id + ", " +
                              std::to_string(r.k) + ")");
    }
    questions.insert(r.question_id);
    it->second.push_back(r);
  }
  for (const auto& q : questions) {
    for (auto k : k_values) {
      if (!pairs.contains({q, k})) {
        throw PreconditionError("build_report: missing record for (" + q + ", " +
                                std::to_string(k) + ")");
      }
    }
  }

  EvalReport report;
  report.questions = questions.size();
  for (auto k : k_values) {
    auto& recs = by_k[k];
    std::sort(recs.begin(), recs.end(),
              [](const auto& a, const auto& b) { return a.question_id < b.question_id; });
    KReport kr;
    kr.k = k;
    kr.records = recs.size();
    for (const auto& r : recs) {
      ++kr.class_counts[static_cast<std::size_t>(r.failure_class)];
      if (r.recall_hit != r.end_to_end) ++kr.recall_failures;
      if (r.llm_reteval != r.end_to_end) ++kr.reteval_failures;
      if (r.diagnosis == Diagnosis::MissButCorrect) ++kr.miss_but_correct;
      if (r.diagnosis == Diagnosis::HitButWrong) ++kr.hit_but_wrong;
      kr.recall += r.scores.recall;
      kr.precision += r.scores.precision;
      kr.f1 += r.scores.f1;
      kr.mrr += r.reciprocal_rank;
      kr.ndcg += r.ndcg;
      kr.llm_reteval_rate += r.llm_reteval ? 1.0 : 0.0;
      kr.end_to_end_rate += r.end_to_end ? 1.0 : 0.0;
    }
    if (!recs.empty()) {
      const double n = static_cast<double>(recs.size());
      for (double* v : {&kr.recall, &kr.precision, &kr.f1, &kr.mrr, &kr.ndcg,
                        &kr.llm_reteval_rate, &kr.end_to_end_rate}) {
        *v /= n;
      }
    }
    kr.all = correlation_of(recs, Subset::All);
    kr.refined = correlation_of(refine(recs), Subset::Refined);
    report.per_k.push_back(std::move(kr));
  }
  return report;
}

json to_json(const QuestionEvalRecord& r) {
  return {{"question_id", r.question_id},
          {"k", r.k},
          {"recall_hit", r.recall_hit},
          {"precision", r.scores.precision},
          {"recall", r.scores.recall},
          {"f1", r.scores.f1},
          {"reciprocal_rank", r.reciprocal_rank},
          {"ndcg", r.ndcg},
          {"llm_reteval", r.llm_reteval},
          {"end_to_end", r.end_to_end},
          {"failure_class", to_string(r.failure_class)},
          {"diagnosis", to_string(r.diagnosis)}};
}

json to_json(const EvalReport& report) {
  json per_k = json::array();
  for (const auto& kr : report.per_k) {
    json classes = json::object();
    for (auto c : {FailureClass::None, FailureClass::ConventionalMetricFailure,
                   FailureClass::RetEvalFailure, FailureClass::Both}) {
      classes[std::string(to_string(c))] = kr.class_counts[static_cast<std::size_t>(c)];
    }
    per_k.push_back({
        {"k", kr.k},
        {"records", kr.records},
        {"recall_failures", kr.recall_failures},
        {"reteval_failures", kr.reteval_failures},
        {"failure_classes", classes},
        {"diagnoses", {{"miss_but_correct", kr.miss_but_correct},
                       {"hit_but_wrong", kr.hit_but_wrong}}},
        {"recall", kr.recall},
        {"precision", kr.precision},
        {"f1", kr.f1},
        {"mrr", kr.mrr},
        {"ndcg", kr.ndcg},
        {"llm_reteval", kr.llm_reteval_rate},
        {"end_to_end", kr.end_to_end_rate},
        {"correlation", {{"all", to_json(kr.all)}, {"refined", to_json(kr.refined)}}},
    });
  }
  return {
      {"schema", "reteval.report/1"},
      {"definitions",
       {{"recall_failures",
         "records where recall_hit (a gold chunk is in the top k) disagrees with end_to_end "
         "(the RAG answer matches the dataset gold answers)"},
        {"reteval_failures",
         "records where llm_reteval (the RAG answer matches answers generated from the gold "
         "chunks) disagrees with end_to_end"},
        {"refined", "records that are not recall failures"},
        {"correlation", "Spearman rho between llm_reteval and recall_hit encoded as 1/0"}}},
      {"questions", report.questions},
      {"excluded_questions", report.excluded_questions},
      {"per_k", per_k},
  };
}

std::string to_csv(const EvalReport& report) {
  std::ostringstream out;
  const auto rho = [](const CorrelationResult& c) { return c.rho ? json(*c.rho).dump() : ""; };
  out << "k,records,recall_failures,reteval_failures,recall,precision,f1,mrr,ndcg,llm_reteval,"
         "end_to_end,rho_all,rho_refined\n";
  for (const auto& kr : report.per_k) {
    out << kr.k << ',' << kr.records << ',' << kr.recall_failures << ',' << kr.reteval_failures
        << ',' << json(kr.recall).dump() << ',' << json(kr.precision).dump() << ','
        << json(kr.f1).dump() << ',' << json(kr.mrr).dump() << ',' << json(kr.ndcg).dump() << ','
        << json(kr.llm_reteval_rate).dump() << ',' << json(kr.end_to_end_rate).dump() << ','
        << rho(kr.all) << ',' << rho(kr.refined) << '\n';
  }
  return out.str();
}

}  // namespace reteval
