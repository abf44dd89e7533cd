#pragma once

#include <fstream>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "tcnkit/digest.hpp"
#include "tcnkit/geometry.hpp"
#include "tcnkit/subdivision.hpp"

namespace tcnkit {

// Append-only enumeration cache, one directory per polygon normal form.
// triangulations.bin holds canonical cell codes (BFS membership, resumable);
// verdicts-c<k>.bin holds (digest, regularity) records for the k-node sweep.
// Records carry checksums; a corrupt tail is quarantined and the valid
// prefix is kept.
class PolygonCache {
 public:
  PolygonCache(std::string dir, const LatticePolygon& polygon);

  const std::string& key() const { return key_; }

  struct TriLoad {
    std::vector<std::string> codes;
    bool complete = false;
  };
  TriLoad load_triangulations() const;

  class TriWriter {
   public:
    explicit TriWriter(const std::string& path);
    void append(const std::string& code);
    void complete(std::uint64_t count);

   private:
    std::mutex mu_;
    std::ofstream out_;
    int pending_ = 0;
  };
  std::unique_ptr<TriWriter> tri_writer() const;

  struct VerdictLoad {
    DigestSet regular;
    DigestSet not_regular;
    bool complete = false;
  };
  void load_verdicts(int c, VerdictLoad& out) const;

  class VerdictWriter {
   public:
    explicit VerdictWriter(const std::string& path);
    void append(Digest128 d, bool regular);
    void complete(std::uint64_t count);

   private:
    std::mutex mu_;
    std::ofstream out_;
    int pending_ = 0;
  };
  std::unique_ptr<VerdictWriter> verdict_writer(int c) const;

  std::string tri_path() const;
  std::string verdict_path(int c) const;

 private:
  static void append_code_record(std::ostream& out, const std::string& code);

  std::string dir_;
  LatticePolygon polygon_;
  std::string key_;
};

}  // namespace tcnkit
