#include <gtest/gtest.h>

#include <sstream>

#include "pdc/errors.hpp"
#include "pdc/matrix_io.hpp"

using namespace pdc;

TEST(MatrixIo, JsaRoundTripIsExact) {
    SourceSpec src = make_source(PumpSpec{}, 1.3, 2.0, PhasematchProfile::sinc, 32);
    src.pump.chirp_fs2 = 12345.0;
    const auto jsa = build_jsa(src);
    std::ostringstream out;
    write_jsa(out, jsa);
    const auto back = read_jsa(out.str());
    EXPECT_TRUE((back.values.array() == jsa.values.array()).all());
    EXPECT_EQ(back.grid.n_signal, 32u);
    EXPECT_EQ(back.grid.span_signal, jsa.grid.span_signal);
    EXPECT_EQ(back.grid.center_idler, jsa.grid.center_idler);
    std::ostringstream again;
    write_jsa(again, back);
    EXPECT_EQ(again.str(), out.str());
}

TEST(MatrixIo, JsiRoundTripIsExact) {
    JointSpectralIntensity jsi;
    jsi.signal = {AxisUnit::wavelength_nm, 1540.1, 0.05, 3, 1545.0};
    jsi.idler = {AxisUnit::wavelength_nm, 1541.7, 0.1, 2, 1545.0};
    jsi.values.resize(3, 2);
    jsi.values << 0.1, 1.0 / 3.0, 0.0, 2e-300, 5.5, 1e10;
    std::ostringstream out;
    write_jsi(out, jsi);
    const auto back = read_jsi(out.str());
    EXPECT_TRUE((back.values.array() == jsi.values.array()).all());
    EXPECT_EQ(back.signal.unit, AxisUnit::wavelength_nm);
    EXPECT_EQ(back.idler.origin, 1541.7);
    EXPECT_EQ(back.signal.step, 0.05);
}

TEST(MatrixIo, MalformedInputsArePositioned) {
    const std::string header =
        "format = jsi\nsignal.unit = wavelength_nm\nsignal.center = 0\nsignal.origin = 0\nsignal.step = 1\n"
        "signal.n = 2\nidler.unit = wavelength_nm\nidler.center = 0\nidler.origin = 0\nidler.step = 1\n"
        "idler.n = 2\nend_header\n";
    auto line_of = [](const std::string& text) -> std::size_t {
        try {
            read_jsi(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    EXPECT_EQ(line_of(header + "1,2\n3,4\n"), 0u);
    EXPECT_EQ(line_of(header + "1,2\n3\n"), 14u);
    EXPECT_EQ(line_of(header + "1,2\n3,x\n"), 14u);
    EXPECT_EQ(line_of(header + "1,2\n"), 13u);
    EXPECT_EQ(line_of(header + "1,2\n3,4\n5,6\n"), 15u);
    EXPECT_GT(line_of("format = jsi\n"), 0u);
    EXPECT_THROW(read_jsa(header + "1,2\n3,4\n"), ParseError);
}

TEST(MatrixIo, ColumnsCsv) {
    std::ostringstream out;
    write_columns_csv(out, {"a", "b"}, {{1.0, 2.5}, {0.1, -3.0}});
    EXPECT_EQ(out.str(), "a,b\n1,0.10000000000000001\n2.5,-3\n");
    EXPECT_THROW(write_columns_csv(out, {"a"}, {{1.0}, {2.0}}), InputError);
    EXPECT_THROW(write_columns_csv(out, {"a", "b"}, {{1.0}, {2.0, 3.0}}), InputError);
}
