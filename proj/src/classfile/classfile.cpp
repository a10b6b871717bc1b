#include "testability/classfile/classfile.hpp"

#include <array>
#include <string_view>

#include "testability/core/errors.hpp"

namespace testability::classfile {
namespace {

constexpr std::uint32_t kMagic = 0xCAFEBABE;

enum ConstantTag : std::uint8_t {
  kUtf8 = 1,
  kInteger = 3,
  kFloat = 4,
  kLong = 5,
  kDouble = 6,
  kClass = 7,
  kString = 8,
  kFieldref = 9,
  kMethodref = 10,
  kInterfaceMethodref = 11,
  kNameAndType = 12,
  kMethodHandle = 15,
  kMethodType = 16,
  kDynamic = 17,
  kInvokeDynamic = 18,
  kModule = 19,
  kPackage = 20,
};

// Fixed instruction lengths; 0 marks opcodes that are variable-length
// (tableswitch, lookupswitch, wide) and -1 marks undefined opcodes.
constexpr std::array<signed char, 256> make_length_table() {
  std::array<signed char, 256> t{};
  for (auto& v : t) v = -1;
  auto fill = [&](int lo, int hi, signed char len) {
    for (int op = lo; op <= hi; ++op) t[static_cast<std::size_t>(op)] = len;
  };
  fill(0x00, 0x0f, 1);  // nop, aconst_null, iconst_*, lconst_*, fconst_*, dconst_*
  fill(0x10, 0x10, 2);  // bipush
  fill(0x11, 0x11, 3);  // sipush
  fill(0x12, 0x12, 2);  // ldc
  fill(0x13, 0x14, 3);  // ldc_w, ldc2_w
  fill(0x15, 0x19, 2);  // iload .. aload
  fill(0x1a, 0x35, 1);  // *load_n, array loads
  fill(0x36, 0x3a, 2);  // istore .. astore
  fill(0x3b, 0x83, 1);  // *store_n, array stores, stack ops, arithmetic
  fill(0x84, 0x84, 3);  // iinc
  fill(0x85, 0x98, 1);  // conversions, comparisons
  fill(0x99, 0xa8, 3);  // if*, goto, jsr
  fill(0xa9, 0xa9, 2);  // ret
  fill(0xaa, 0xab, 0);  // tableswitch, lookupswitch
  fill(0xac, 0xb1, 1);  // returns
  fill(0xb2, 0xb8, 3);  // field access, invokevirtual/special/static
  fill(0xb9, 0xba, 5);  // invokeinterface, invokedynamic
  fill(0xbb, 0xbb, 3);  // new
  fill(0xbc, 0xbc, 2);  // newarray
  fill(0xbd, 0xbd, 3);  // anewarray
  fill(0xbe, 0xbf, 1);  // arraylength, athrow
  fill(0xc0, 0xc1, 3);  // checkcast, instanceof
  fill(0xc2, 0xc3, 1);  // monitorenter, monitorexit
  fill(0xc4, 0xc4, 0);  // wide
  fill(0xc5, 0xc5, 4);  // multianewarray
  fill(0xc6, 0xc7, 3);  // ifnull, ifnonnull
  fill(0xc8, 0xc9, 5);  // goto_w, jsr_w
  return t;
}

constexpr auto kLengths = make_length_table();

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint8_t u1() {
    need(1);
    return bytes_[pos_++];
  }
  std::uint16_t u2() {
    need(2);
    const auto v = static_cast<std::uint16_t>((bytes_[pos_] << 8) | bytes_[pos_ + 1]);
    pos_ += 2;
    return v;
  }
  std::uint32_t u4() {
    need(4);
    const std::uint32_t v = (std::uint32_t{bytes_[pos_]} << 24) |
                            (std::uint32_t{bytes_[pos_ + 1]} << 16) |
                            (std::uint32_t{bytes_[pos_ + 2]} << 8) | std::uint32_t{bytes_[pos_ + 3]};
    pos_ += 4;
    return v;
  }
  std::span<const std::uint8_t> take(std::size_t n) {
    need(n);
    auto out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }
  void skip(std::size_t n) { take(n); }
  std::size_t position() const { return pos_; }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) {
      throw MalformedClassFile("truncated class file at offset " + std::to_string(pos_));
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

std::uint32_t read_be32(std::span<const std::uint8_t> code, std::size_t at) {
  if (at + 4 > code.size()) throw MalformedClassFile("truncated switch operands");
  return (std::uint32_t{code[at]} << 24) | (std::uint32_t{code[at + 1]} << 16) |
         (std::uint32_t{code[at + 2]} << 8) | std::uint32_t{code[at + 3]};
}

struct ConstantPool {
  std::vector<std::uint8_t> tags;
  std::vector<std::string> utf8;
  std::vector<std::uint16_t> class_name_index;

  const std::string& utf8_at(std::uint16_t index) const {
    if (index == 0 || index >= tags.size() || tags[index] != kUtf8) {
      throw MalformedClassFile("constant #" + std::to_string(index) + " is not a Utf8 entry");
    }
    return utf8[index];
  }

  const std::string& class_name(std::uint16_t index) const {
    if (index == 0 || index >= tags.size() || tags[index] != kClass) {
      throw MalformedClassFile("constant #" + std::to_string(index) + " is not a Class entry");
    }
    return utf8_at(class_name_index[index]);
  }
};

ConstantPool read_constant_pool(Reader& r) {
  const std::uint16_t count = r.u2();
  if (count == 0) throw MalformedClassFile("constant pool count is zero");
  ConstantPool pool;
  pool.tags.assign(count, 0);
  pool.utf8.assign(count, {});
  pool.class_name_index.assign(count, 0);
  for (std::uint16_t i = 1; i < count; ++i) {
    const std::uint8_t tag = r.u1();
    pool.tags[i] = tag;
    switch (tag) {
      case kUtf8: {
        const std::uint16_t len = r.u2();
        const auto data = r.take(len);
        pool.utf8[i].assign(data.begin(), data.end());
        break;
      }
      case kInteger:
      case kFloat:
      case kFieldref:
      case kMethodref:
      case kInterfaceMethodref:
      case kNameAndType:
      case kDynamic:
      case kInvokeDynamic:
        r.skip(4);
        break;
      case kLong:
      case kDouble:
        r.skip(8);
        if (++i >= count) throw MalformedClassFile("8-byte constant overruns the pool");
        break;
      case kClass:
        pool.class_name_index[i] = r.u2();
        break;
      case kString:
      case kMethodType:
      case kModule:
      case kPackage:
        r.skip(2);
        break;
      case kMethodHandle:
        r.skip(3);
        break;
      default:
        throw MalformedClassFile("unknown constant pool tag " + std::to_string(tag) +
                                 " at entry #" + std::to_string(i));
    }
  }
  return pool;
}

void skip_attributes(Reader& r) {
  const std::uint16_t count = r.u2();
  for (std::uint16_t i = 0; i < count; ++i) {
    r.skip(2);
    r.skip(r.u4());
  }
}

void decode_code_attribute(std::span<const std::uint8_t> attribute, MethodSummary& method) {
  Reader r(attribute);
  r.skip(4);  // max_stack, max_locals
  const std::uint32_t code_length = r.u4();
  if (code_length == 0) throw MalformedClassFile("method " + method.name + " has empty code");
  const auto code = r.take(code_length);
  r.skip(std::size_t{r.u2()} * 8);  // exception table
  skip_attributes(r);
  if (r.remaining() != 0) {
    throw MalformedClassFile("Code attribute of " + method.name + " has inconsistent length");
  }
  std::size_t offset = 0;
  std::uint64_t count = 0;
  while (offset < code.size()) {
    offset += instruction_length(code, offset);
    ++count;
  }
  if (offset != code.size()) {
    throw MalformedClassFile("instruction stream of " + method.name + " overruns code_length");
  }
  method.has_code = true;
  method.code_length = code_length;
  method.decoded_length = static_cast<std::uint32_t>(offset);
  method.instruction_count = count;
}

}  // namespace

std::size_t instruction_length(std::span<const std::uint8_t> code, std::size_t offset) {
  const std::uint8_t op = code[offset];
  const signed char fixed = kLengths[op];
  std::size_t len = 0;
  if (fixed < 0) {
    throw MalformedClassFile("undefined opcode 0x" +
                             std::string(1, "0123456789abcdef"[op >> 4]) +
                             std::string(1, "0123456789abcdef"[op & 15]) + " at offset " +
                             std::to_string(offset));
  }
  if (fixed > 0) {
    len = static_cast<std::size_t>(fixed);
  } else if (op == 0xaa || op == 0xab) {
    const std::size_t pad = (4 - (offset + 1) % 4) % 4;
    const std::size_t base = offset + 1 + pad;
    if (op == 0xaa) {  // tableswitch: default, low, high, offsets
      const auto low = static_cast<std::int32_t>(read_be32(code, base + 4));
      const auto high = static_cast<std::int32_t>(read_be32(code, base + 8));
      if (high < low) throw MalformedClassFile("tableswitch with high < low");
      const std::size_t entries = static_cast<std::size_t>(std::int64_t{high} - low + 1);
      len = 1 + pad + 12 + 4 * entries;
    } else {  // lookupswitch: default, npairs, pairs
      const auto npairs = static_cast<std::int32_t>(read_be32(code, base + 4));
      if (npairs < 0) throw MalformedClassFile("lookupswitch with negative npairs");
      len = 1 + pad + 8 + 8 * static_cast<std::size_t>(npairs);
    }
  } else {  // wide
    if (offset + 1 >= code.size()) throw MalformedClassFile("truncated wide instruction");
    const std::uint8_t inner = code[offset + 1];
    if (inner == 0x84) {
      len = 6;
    } else if ((inner >= 0x15 && inner <= 0x19) || (inner >= 0x36 && inner <= 0x3a) ||
               inner == 0xa9) {
      len = 4;
    } else {
      throw MalformedClassFile("wide applied to opcode " + std::to_string(inner));
    }
  }
  if (offset + len > code.size()) {
    throw MalformedClassFile("instruction at offset " + std::to_string(offset) +
                             " overruns code_length");
  }
  return len;
}

ClassFileSummary parse_classfile(std::span<const std::uint8_t> bytes, const ReaderOptions& options) {
  Reader r(bytes);
  if (bytes.size() < 4 || r.u4() != kMagic) throw MalformedClassFile("bad magic number");
  ClassFileSummary summary;
  r.u2();  // minor
  summary.major_version = r.u2();
  if (summary.major_version > options.max_major_version) {
    throw UnsupportedMajorVersion("class file major version " +
                                  std::to_string(summary.major_version) + " exceeds " +
                                  std::to_string(options.max_major_version));
  }
  const ConstantPool pool = read_constant_pool(r);
  r.u2();  // access flags
  std::string name = pool.class_name(r.u2());
  for (char& c : name) {
    if (c == '/') c = '.';
  }
  summary.class_name = std::move(name);
  r.u2();                            // super class
  r.skip(std::size_t{r.u2()} * 2);  // interfaces

  const std::uint16_t field_count = r.u2();
  for (std::uint16_t i = 0; i < field_count; ++i) {
    r.skip(6);
    skip_attributes(r);
  }

  const std::uint16_t method_count = r.u2();
  for (std::uint16_t i = 0; i < method_count; ++i) {
    MethodSummary method;
    r.u2();  // access flags
    method.name = pool.utf8_at(r.u2());
    method.descriptor = pool.utf8_at(r.u2());
    const std::uint16_t attr_count = r.u2();
    for (std::uint16_t a = 0; a < attr_count; ++a) {
      const std::string& attr_name = pool.utf8_at(r.u2());
      const std::uint32_t len = r.u4();
      const auto body = r.take(len);
      if (attr_name == "Code") {
        if (method.has_code) throw MalformedClassFile("method " + method.name + " has two Code attributes");
        decode_code_attribute(body, method);
      }
    }
    summary.methods.push_back(std::move(method));
  }
  skip_attributes(r);
  if (r.remaining() != 0) throw MalformedClassFile("trailing bytes after class attributes");
  return summary;
}

std::uint64_t count_nbi(const ClassFileSummary& summary) {
  std::uint64_t total = 0;
  for (const auto& m : summary.methods) total += m.instruction_count;
  return total;
}

std::string top_level_name(const std::string& binary_name) {
  const auto dot = binary_name.rfind('.');
  const auto dollar = binary_name.find('$', dot == std::string::npos ? 0 : dot + 1);
  return dollar == std::string::npos ? binary_name : binary_name.substr(0, dollar);
}

}  // namespace testability::classfile
