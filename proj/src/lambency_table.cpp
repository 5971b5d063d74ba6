#include "pm/arith.hpp"

namespace pm {

// Fricke genus zero lambencies and the D0 values they admit (0 = none).
const std::vector<FrickeEntry>& fricke_genus_zero_table()
{
    static const std::vector<FrickeEntry> table = {
        {"1", {-3, -4}},
        {"17+17", {-4}},
        {"31+31", {-3}},
        {"51+3,17,51", {}},
        {"2+2", {-4}},
        {"18+2,9,18", {}},
        {"32+32", {}},
        {"54+2,27,54", {}},
        {"3+3", {-3}},
        {"18+18", {}},
        {"33+33", {}},
        {"55+5,11,55", {}},
        {"4+4", {}},
        {"19+19", {-3}},
        {"34+2,17,34", {-4}},
        {"56+7,8,56", {}},
        {"5+5", {-4}},
        {"20+4,5,20", {}},
        {"35+5,7,35", {}},
        {"59+59", {}},
        {"6+2,3,6", {}},
        {"20+20", {}},
        {"35+35", {}},
        {"60+3,4,12,15,20,60", {}},
        {"6+6", {}},
        {"21+3,7,21", {-3}},
        {"36+4,9,36", {}},
        {"60+4,15,60", {}},
        {"7+7", {-3}},
        {"21+21", {}},
        {"36+36", {}},
        {"62+2,31,62", {}},
        {"8+8", {}},
        {"22+2,11,22", {}},
        {"38+2,19,38", {}},
        {"66+2,3,6,11,22,33,66", {}},
        {"9+9", {}},
        {"23+23", {}},
        {"39+3,13,39", {-3}},
        {"66+6,11,66", {}},
        {"10+2,5,10", {-4}},
        {"24+3,8,24", {}},
        {"39+39", {}},
        {"69+3,23,69", {}},
        {"10+10", {}},
        {"24+24", {}},
        {"41+41", {-4}},
        {"70+2,5,7,10,14,35,70", {}},
        {"11+11", {}},
        {"25+25", {-4}},
        {"42+2,3,6,7,14,21,42", {}},
        {"71+71", {}},
        {"12+3,4,12", {}},
        {"26+2,13,26", {-4}},
        {"42+3,14,42", {}},
        {"78+2,3,6,13,26,39,78", {}},
        {"12+12", {}},
        {"26+26", {}},
        {"44+4,11,44", {}},
        {"87+3,29,87", {}},
        {"13+13", {-3, -4}},
        {"27+27", {}},
        {"45+5,9,45", {}},
        {"92+4,23,92", {}},
        {"14+2,7,14", {}},
        {"28+4,7,28", {}},
        {"46+2,23,46", {}},
        {"94+2,47,94", {}},
        {"14+14", {}},
        {"29+29", {-4}},
        {"47+47", {}},
        {"95+5,19,95", {}},
        {"15+3,5,15", {}},
        {"30+2,3,5,6,10,15,30", {}},
        {"49+49", {-3}},
        {"105+3,5,7,15,21,35,105", {}},
        {"15+15", {}},
        {"30+2,15,30", {}},
        {"50+2,25,50", {-4}},
        {"110+2,5,10,11,22,55,110", {}},
        {"16+16", {}},
        {"30+5,6,30", {}},
        {"50+50", {}},
        {"119+7,17,119", {}},
    };
    return table;
}

} // namespace pm
