#include "tcnkit/cache.hpp"

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "tcnkit/json_io.hpp"

namespace tcnkit {

namespace fs = std::filesystem;

namespace {

constexpr std::uint8_t kTagCode = 1;
constexpr std::uint8_t kTagVerdict = 2;
constexpr std::uint8_t kTagComplete = 3;

std::uint8_t payload_checksum(const std::uint8_t* p, std::size_t n) {
  std::uint32_t x = 0x5a;
  for (std::size_t i = 0; i < n; ++i) x = (x * 131 + p[i]) & 0xff;
  return static_cast<std::uint8_t>(x);
}

void quarantine(const fs::path& file) {
  std::error_code ec;
  fs::path q = file;
  q += ".quarantined";
  fs::rename(file, q, ec);  // best effort; a failed rename leaves the file
}

}  // namespace

PolygonCache::PolygonCache(std::string dir, const LatticePolygon& polygon)
    : dir_(std::move(dir)), polygon_(polygon) {
  std::string nf = to_string(polygon);
  Digest128 d = digest_string(nf);
  char buf[33];
  std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(d.hi),
                static_cast<unsigned long long>(d.lo));
  key_ = std::string("poly-") + buf;
  fs::create_directories(fs::path(dir_) / key_);
  // Human-readable marker for the cache directory.
  fs::path meta = fs::path(dir_) / key_ / "polygon.json";
  if (!fs::exists(meta)) {
    std::ofstream out(meta);
    out << polygon_to_json(polygon).dump() << "\n";
  }
}

std::string PolygonCache::tri_path() const {
  return (fs::path(dir_) / key_ / "triangulations.bin").string();
}

std::string PolygonCache::verdict_path(int c) const {
  return (fs::path(dir_) / key_ / ("verdicts-c" + std::to_string(c) + ".bin")).string();
}

PolygonCache::TriLoad PolygonCache::load_triangulations() const {
  TriLoad out;
  std::ifstream in(tri_path(), std::ios::binary);
  if (!in.good()) return out;
  bool corrupt = false;
  for (;;) {
    int tag = in.get();
    if (tag == EOF) break;
    if (tag == kTagCode) {
      std::uint8_t lenb[2];
      if (!in.read(reinterpret_cast<char*>(lenb), 2)) {
        corrupt = true;
        break;
      }
      std::size_t len = lenb[0] | (static_cast<std::size_t>(lenb[1]) << 8);
      std::string code(len, '\0');
      int csum = 0;
      if (!in.read(code.data(), len) || (csum = in.get()) == EOF) {
        corrupt = true;
        break;
      }
      if (payload_checksum(reinterpret_cast<const std::uint8_t*>(code.data()), len) !=
          static_cast<std::uint8_t>(csum)) {
        corrupt = true;
        break;
      }
      out.codes.push_back(std::move(code));
    } else if (tag == kTagComplete) {
      std::uint8_t buf[9];
      if (!in.read(reinterpret_cast<char*>(buf), 9) ||
          payload_checksum(buf, 8) != buf[8]) {
        corrupt = true;
        break;
      }
      std::uint64_t count = 0;
      std::memcpy(&count, buf, 8);
      if (count == out.codes.size()) out.complete = true;
    } else {
      corrupt = true;
      break;
    }
  }
  if (corrupt) {
    in.close();
    quarantine(tri_path());
    // Keep the valid prefix so the BFS can resume from it.
    std::ofstream rewrite(tri_path(), std::ios::binary | std::ios::trunc);
    for (auto& code : out.codes) append_code_record(rewrite, code);
    out.complete = false;
  }
  return out;
}

void PolygonCache::append_code_record(std::ostream& out, const std::string& code) {
  std::uint8_t head[3] = {kTagCode, static_cast<std::uint8_t>(code.size() & 0xff),
                          static_cast<std::uint8_t>(code.size() >> 8)};
  out.write(reinterpret_cast<const char*>(head), 3);
  out.write(code.data(), static_cast<std::streamsize>(code.size()));
  std::uint8_t csum =
      payload_checksum(reinterpret_cast<const std::uint8_t*>(code.data()), code.size());
  out.write(reinterpret_cast<const char*>(&csum), 1);
}

PolygonCache::TriWriter::TriWriter(const std::string& path) {
  out_.open(path, std::ios::binary | std::ios::app);
}

void PolygonCache::TriWriter::append(const std::string& code) {
  std::lock_guard<std::mutex> lock(mu_);
  append_code_record(out_, code);
  if (++pending_ >= 4096) {
    out_.flush();
    pending_ = 0;
  }
}

void PolygonCache::TriWriter::complete(std::uint64_t count) {
  std::lock_guard<std::mutex> lock(mu_);
  std::uint8_t rec[10];
  rec[0] = kTagComplete;
  std::memcpy(rec + 1, &count, 8);
  rec[9] = payload_checksum(rec + 1, 8);
  out_.write(reinterpret_cast<const char*>(rec), 10);
  out_.flush();
}

std::unique_ptr<PolygonCache::TriWriter> PolygonCache::tri_writer() const {
  return std::make_unique<TriWriter>(tri_path());
}

void PolygonCache::load_verdicts(int c, VerdictLoad& out) const {
  std::ifstream in(verdict_path(c), std::ios::binary);
  if (!in.good()) return;
  bool corrupt = false;
  std::uint64_t records = 0;
  for (;;) {
    int tag = in.get();
    if (tag == EOF) break;
    if (tag == kTagVerdict) {
      std::uint8_t buf[18];
      if (!in.read(reinterpret_cast<char*>(buf), 18) || payload_checksum(buf, 17) != buf[17]) {
        corrupt = true;
        break;
      }
      Digest128 d;
      std::memcpy(&d.hi, buf, 8);
      std::memcpy(&d.lo, buf + 8, 8);
      if (buf[16])
        out.regular.insert(d);
      else
        out.not_regular.insert(d);
      ++records;
    } else if (tag == kTagComplete) {
      std::uint8_t buf[9];
      if (!in.read(reinterpret_cast<char*>(buf), 9) || payload_checksum(buf, 8) != buf[8]) {
        corrupt = true;
        break;
      }
      std::uint64_t count = 0;
      std::memcpy(&count, buf, 8);
      if (count == records) out.complete = true;
    } else {
      corrupt = true;
      break;
    }
  }
  if (corrupt) quarantine(verdict_path(c));
}

PolygonCache::VerdictWriter::VerdictWriter(const std::string& path) {
  out_.open(path, std::ios::binary | std::ios::app);
}

void PolygonCache::VerdictWriter::append(Digest128 d, bool regular) {
  std::lock_guard<std::mutex> lock(mu_);
  std::uint8_t rec[19];
  rec[0] = kTagVerdict;
  std::memcpy(rec + 1, &d.hi, 8);
  std::memcpy(rec + 9, &d.lo, 8);
  rec[17] = regular ? 1 : 0;
  rec[18] = payload_checksum(rec + 1, 17);
  out_.write(reinterpret_cast<const char*>(rec), 19);
  if (++pending_ >= 4096) {
    out_.flush();
    pending_ = 0;
  }
}

void PolygonCache::VerdictWriter::complete(std::uint64_t count) {
  std::lock_guard<std::mutex> lock(mu_);
  std::uint8_t rec[10];
  rec[0] = kTagComplete;
  std::memcpy(rec + 1, &count, 8);
  rec[9] = payload_checksum(rec + 1, 8);
  out_.write(reinterpret_cast<const char*>(rec), 10);
  out_.flush();
}

std::unique_ptr<PolygonCache::VerdictWriter> PolygonCache::verdict_writer(int c) const {
  return std::make_unique<VerdictWriter>(verdict_path(c));
}

}  // namespace tcnkit
