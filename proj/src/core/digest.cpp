#include "core/digest.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <memory>
#include <vector>

#include "core/error.hpp"

namespace relpub {

namespace {

const EVP_MD* evp_md(HashAlg alg) { return alg == HashAlg::sha256 ? EVP_sha256() : EVP_sha512(); }

std::string to_hex(const unsigned char* data, unsigned len) {
  static const char* digits = "0123456789abcdef";
  std::string out(len * 2, '0');
  for (unsigned i = 0; i < len; ++i) {
    out[2 * i] = digits[data[i] >> 4];
    out[2 * i + 1] = digits[data[i] & 0xF];
  }
  return out;
}

struct MdCtx {
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  ~MdCtx() { EVP_MD_CTX_free(ctx); }
};

}  // namespace

const char* to_string(HashAlg alg) { return alg == HashAlg::sha256 ? "sha256" : "sha512"; }

std::optional<HashAlg> hash_alg_from_string(std::string_view name) {
  if (name == "sha256") return HashAlg::sha256;
  if (name == "sha512") return HashAlg::sha512;
  return std::nullopt;
}

std::string digest_file_hex(const std::filesystem::path& path, HashAlg alg) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file for hashing: " + path.string());

  MdCtx md;
  if (EVP_DigestInit_ex(md.ctx, evp_md(alg), nullptr) != 1)
    throw IoError("digest initialization failed");

  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    std::streamsize got = in.gcount();
    if (got > 0) EVP_DigestUpdate(md.ctx, buf.data(), static_cast<std::size_t>(got));
  }
  if (in.bad()) throw IoError("read error while hashing: " + path.string());

  unsigned char out[EVP_MAX_MD_SIZE];
  unsigned out_len = 0;
  EVP_DigestFinal_ex(md.ctx, out, &out_len);
  return to_hex(out, out_len);
}

std::string digest_bytes_hex(std::string_view bytes, HashAlg alg) {
  MdCtx md;
  EVP_DigestInit_ex(md.ctx, evp_md(alg), nullptr);
  EVP_DigestUpdate(md.ctx, bytes.data(), bytes.size());
  unsigned char out[EVP_MAX_MD_SIZE];
  unsigned out_len = 0;
  EVP_DigestFinal_ex(md.ctx, out, &out_len);
  return to_hex(out, out_len);
}

}  // namespace relpub
