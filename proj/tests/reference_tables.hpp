// Generated by tests/reference/gen_tables.py; do not edit by hand.
// Values are mpmath evaluations at 50 digits, rounded to double.
#pragma once

namespace refdata {

struct BesselRef { double x, j0, j1, y0, y1; };

inline constexpr BesselRef bessel_accept[] = {
    {0.5, 0.9384698072408129, 0.2422684576748739, -0.44451873350670656, -1.471472392670243},
    {1.0, 0.7651976865579666, 0.4400505857449335, 0.08825696421567696, -0.7812128213002887},
    {2.0, 0.22389077914123567, 0.5767248077568734, 0.5103756726497451, -0.10703243154093754},
    {5.0, -0.1775967713143383, -0.32757913759146523, -0.30851762524903376, 0.14786314339122683},
    {10.0, -0.24593576445134835, 0.04347274616886144, 0.055671167283599395, 0.24901542420695388},
    {50.0, 0.055812327669251816, -0.09751182812517514, -0.09806499547007708, -0.05679566856201477},
};

inline constexpr BesselRef bessel_grid[] = {
    {0.040023975649167605, 0.9995995604375134, 0.02000798089503484, -2.1215179228868855, -15.954796637879152},
    {0.04009368812976769, 0.9995981644173065, 0.02004281616235776, -2.1204066368006615, -15.927203131190433},
    {0.04009363942649513, 0.9995981653934567, 0.020042791825399326, -2.1204074125080457, -15.92722237530055},
    {0.04001541620527482, 0.9995997316763983, 0.020003703743165176, -2.1216545016005535, -15.958191265698378},
    {0.1, 0.99750156206604, 0.049937526036242, -1.5342386513503667, -6.4589510947020266},
    {0.3, 0.9776262465382961, 0.148318816273104, -0.8072735778045195, -2.2931051383885293},
    {0.7, 0.8812008886074053, 0.32899574154005895, -0.19066492933739507, -1.1032498719076334},
    {1.5, 0.5118276717359181, 0.5579365079100996, 0.38244892379775886, -0.4123086269739113},
    {2.5, -0.048383776468198, 0.49709410246427405, 0.4980703596152319, 0.1459181379667858},
    {4.1, -0.3886696798358537, -0.1032732577473387, -0.05609462660634462, 0.3845940348189165},
    {6.2, 0.20174722294890424, -0.23291656707322267, -0.2483099505160143, -0.22228364062007436},
    {7.9, 0.19436184484127833, 0.21917939992175114, 0.20652094814437572, -0.1817210772805732},
    {9.0, -0.09033361118287614, 0.24531178657332528, 0.24993669828502468, 0.10431457519671589},
    {11.0, -0.1711903004071961, -0.17678529895672151, -0.16884732389207954, 0.16370553741494284},
    {13.0, 0.20692610237706782, -0.07031805212177837, -0.07820786452787591, -0.2100814084206935},
    {15.0, -0.014224472826780772, 0.20510403861352275, 0.20546429603891828, 0.02107362803687351},
    {16.2, -0.18927494697794456, 0.052961499126834316, 0.058769991783496935, 0.19117675382841037},
    {17.5, -0.10311039822868592, -0.1634199694257549, -0.16041119250501118, 0.09857279873421605},
    {18.5, 0.0771648214225547, -0.16663364001001604, -0.16865634504032312, -0.08174785849680946},
    {20.3, 0.13999771245945297, 0.11188437497200554, 0.10840547144286702, -0.13737154104731908},
    {25.0, 0.09626678327595811, -0.1253502495802899, -0.12724943226800614, -0.09882996478323741},
    {35.0, -0.12684568275631258, 0.04399094217962564, 0.04579798719515564, 0.12751273354559012},
    {60.0, -0.09147180408906187, 0.046598383758166315, 0.0473589522094494, 0.09186960936986689},
    {90.0, 0.026630016699969512, 0.07992564670886808, 0.07977647585487777, -0.02618723860776823},
    {150.555, 0.03360641497564277, -0.05555800883852953, -0.05566930906299764, -0.033791478558802615},
    {400.0, -0.03882518153078396, -0.00922205842858635, -0.00917351986075936, 0.03881374498075154},
    {1000.0, 0.024786686152420176, 0.004728311907089524, 0.0047159179776228135, -0.024784331292351778},
    {2000.0, 0.007098341833199617, 0.016370141522854216, 0.016368366425995578, -0.007094249963671969},
    {5000.0, -0.0066489842514483475, -0.00911740571364616, -0.009116740769643963, 0.00664807261062542},
    {10000.0, -0.0070961603533888015, 0.0036474507555295803, 0.0036478055589866058, 0.007096342752536495},
};

struct GreenRef { double lambda, mu, omega, v; double p1re, p1im, p2re, p2im; };

inline constexpr GreenRef green2d[] = {
    {1.0, 4.0, 10.0, 1e-06, 0.3521478065358863, 0.04513888888857663, 0.011052426604898193, 1.5673225308604857e-13},
    {1.0, 4.0, 10.0, 1e-05, 0.2859800091991617, 0.045138888857663, 0.011052426710064008, 1.567322530493019e-11},
    {1.0, 4.0, 10.0, 0.0001, 0.21981219504312965, 0.04513888576630021, 0.011052434952127235, 1.5673224937463387e-09},
    {1.0, 4.0, 10.0, 0.001, 0.15364314758102746, 0.04513857663053299, 0.011053031705063969, 1.5673188190813443e-07},
    {1.0, 4.0, 10.0, 0.02, 0.06728950189694428, 0.04501406812474816, 0.011174760066776002, 6.263353220792474e-05},
    {1.0, 4.0, 10.0, 0.3, -0.019382227714042657, 0.02096550236904444, 0.012409815351401026, 0.011313716038682852},
    {1.0, 4.0, 10.0, 1.0, 0.017858277388465293, -0.0052807422167687485, -0.02354758715860684, -0.01030005917064481},
    {1.0, 4.0, 10.0, 2.5, 0.01017036576705186, 0.010900080211698299, -0.016919051276925712, -0.010200066999968867},
    {2.0, 0.5, 3.0, 1e-06, 2.275907014837085, 0.29166666666496355, 0.13262911925244472, 1.0937499999983203e-12},
    {2.0, 0.5, 3.0, 1e-05, 1.8483612476338604, 0.29166666649635414, 0.1326291200027785, 1.0937499998320313e-10},
    {2.0, 0.5, 3.0, 0.0001, 1.4208153873143374, 0.2916666496354169, 0.13262917916351563, 1.093749983203125e-08},
    {2.0, 0.5, 3.0, 0.001, 0.9932626622545845, 0.29166496354377797, 0.132633507966198, 1.0937483203134485e-06},
    {2.0, 0.5, 3.0, 0.02, 0.43549813534594656, 0.29098575440829205, 0.13354955322737663, 0.00043723131069583647},
    {2.0, 0.5, 3.0, 0.3, -0.13036640249362763, 0.15470045125700824, 0.1597358465911996, 0.08550510837241712},
    {2.0, 0.5, 3.0, 1.0, 0.1098124013076121, -0.13924763148314, -0.20339039239314977, 0.12494745840770888},
    {2.0, 0.5, 3.0, 2.5, 0.0498712946777107, -0.11213349159027515, -0.04213180364731625, 0.0811453255216233},
};

inline constexpr GreenRef green3d[] = {
    {1.0, 4.0, 10.0, 0.0001, 143.6815259678331, 0.07613893539993877, 55.26213800696154, 1.4395444248195925e-09},
    {1.0, 4.0, 10.0, 0.001, 14.36795579495137, 0.07613859633649987, 5.526263190991263, 1.4395416654916768e-07},
    {1.0, 4.0, 10.0, 0.005, 2.872637020985607, 0.0761303768856987, 1.1054920779519473, 3.5986869347366817e-06},
    {1.0, 4.0, 10.0, 0.02, 0.7144354390877081, 0.07600201504161994, 0.2773065640354913, 5.7537195690089006e-05},
    {1.0, 4.0, 10.0, 0.3, -0.0007677070676489448, 0.04875279059274945, 0.02760933816950756, 0.010839299874338352},
    {1.0, 4.0, 10.0, 1.0, 0.007946298564036884, -0.014733126622852316, -0.021232239854518088, 0.00436000453955106},
    {1.0, 4.0, 10.0, 3.0, -0.005488007058974858, 0.004188600053136058, 0.003915340234626399, -0.005544490716322594},
    {2.0, 0.5, 3.0, 0.0001, 928.4037262784196, 0.46547283336640966, 663.1456310313733, 8.010958592194434e-09},
    {2.0, 0.5, 3.0, 0.001, 92.83929922901461, 0.4654712244558339, 66.31490777199176, 8.010948297926571e-07},
    {2.0, 0.5, 3.0, 0.005, 18.562655702820734, 0.46543222150061286, 13.264652547851911, 2.0026746857602223e-05},
    {2.0, 0.5, 3.0, 0.02, 4.620348646115579, 0.46482303417244625, 3.3226824578391816, 0.00032027200908034615},
    {2.0, 0.5, 3.0, 0.3, 0.029921823203528278, 0.3313750478146464, 0.2985164354276988, 0.06404647909334178},
    {2.0, 0.5, 3.0, 1.0, -0.020894748679130003, -0.1398261164872522, -0.0856613926970631, 0.161828767445398},
    {2.0, 0.5, 3.0, 3.0, 0.05001314430077232, 0.011513166859509105, -0.041205205700689605, -0.025300158468518658},
};

} // namespace refdata
