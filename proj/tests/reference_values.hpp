// Generated by tests/oracles/generate_reference.py. Do not edit.
#pragma once

#include <cstddef>

namespace stormcast::reference {
inline constexpr double kLevels[] = {
    50.0, 67.0, 90.0, 95.0,
    98.0, 99.0};
inline constexpr double kZScores[] = {
    0.6744897501960817, 0.9741138770593092, 1.6448536269514722, 1.959963984540054,
    2.3263478740408408, 2.5758293035489004};
inline constexpr double kBearing25n80wTo26n79w = 41.85476182279687;
inline constexpr double kDistance25n80wTo26n79w = 149.78833966413393;
inline constexpr double kDistanceOneDegreeEquator = 111.19492664455873;
inline constexpr double kDistanceQuarterMeridian = 10007.543398010286;
inline constexpr double kSample_normal_100[] = {
    0.03419276725318417, 1.3597475403099617, 1.2247210785859324, -0.5103070767876675,
    -0.2979695111064471, -0.5273841930334252, 0.5697263575719601, -0.056064439045617594,
    0.7468856162565439, -1.8473247989741095, 1.5665487746995206, -0.09643216015562055,
    0.6803784532741461, -0.13656633397682774, -0.3790985670748533, 0.46311015859758675,
    0.824513527530113, -0.20252987069345152, -0.15278617857019708, 0.685698610809258,
    -0.8703406419471712, -1.5143835037313955, 0.39498186274953, -0.6705658236878794,
    -1.9203405901180286, -0.8140536639453595, -0.467597558892747, -1.1932024774322612,
    -1.4924638840630338, 0.03663782694480509, 0.8972492567277476, -0.23313207796045685,
    -0.7435960295088448, 0.3849938087479083, 0.7172358071943838, -0.3000105984884774,
    0.5446678079208929, 1.0428754765829538, -0.20695643620832396, -0.8135155419815723,
    0.3476505985155095, 0.24754574096284754, 1.0988127684144084, -1.284580778805345,
    -0.6616129303555477, -0.8381669607156745, -1.7340148462328515, 0.1264345551969962,
    0.527804212495524, -0.7387900314758065, 1.3856470744961586, 0.8219243366604353,
    0.6273764788355353, 0.4017070914409699, 0.955669564448635, -1.3319798395431022,
    0.6139296582498643, 0.6027768335334479, -1.7677185771429749, 0.34703010205437973,
    -0.2504213467099684, 0.7815226960616993, -0.4390621876376686, -0.01824085764910033,
    0.3428515173176555, -0.8762616887442077, 0.5985966481803844, -0.10496318852366823,
    0.49248262367924284, -0.5218375063367878, 1.0862015432775176, 0.6052019784294742,
    -0.17802502471933673, 0.6319571570936101, 1.259755161358625, 1.7911755134979888,
    -1.5735763704402195, 0.8831318116225195, 0.4650685085133813, -0.09386078018634399,
    -1.0066649349770713, 1.2571886134731436, -1.2617379934445705, 0.5669454657347489,
    1.3018679962026896, -1.5996692880514796, -0.30251784048326236, -1.3092168175162993,
    0.24405410803590055, 1.5143751306746547, 2.0235560291721977, -1.7781144428835152,
    -0.5749490057210601, 0.7035450933309114, 1.5793726520932216, 0.4212106442782976,
    -0.7461519975907094, 0.2971315096374385, -0.01661920098083325, -0.2037407223881694};
inline constexpr double kSample_normal_20[] = {
    -0.006826779865523179, 1.0461432923049026, 0.7415884212884828, 0.7239565416499906,
    1.6187762233340763, -1.2055581426463289, -0.6269554710763733, -1.3206632116051251,
    -0.10775250794802987, 0.9987636553170226, -0.02194788627038025, 0.4958800664642217,
    -1.910768664176647, 0.14706416587832766, -0.9069432512592963, 1.7753893872461408,
    0.8868490764587924, 0.9493494832580337, -0.05785496250096947, 0.6128622742800935};
inline constexpr double kSample_normal_250[] = {
    1.8267565599574231, -3.0783319101980338, 0.9580639753088469, 0.06963722766094482,
    1.3182500241810684, 0.385629249998389, 1.8272586275861753, 0.0317437591517664,
    -0.5162294444924808, 0.5804849213397179, 0.43210686133773885, -0.35683935740335093,
    -0.24730382198818454, 0.7194406781853278, 0.7043159938619936, -0.4939342302351804,
    -0.3677137240199963, -1.8067903895865323, 1.6792074674884705, -0.2242908783928769,
    1.337277430495411, 0.4174655938071864, 1.9439627746249157, 1.537109976128164,
    0.318298439352904, 1.480763419858435, -0.9501235216099734, 1.2586181429890126,
    -1.4804236275921896, 0.3432363675742628, 1.064876469210243, 0.22363214164877185,
    -0.3671374972389881, -0.8055600446794365, -0.3428000151424468, 1.051125142503177,
    0.8908394462458891, -0.2621314629648405, -1.2460043473128628, 0.6739972418852872,
    -1.4498739364757562, -0.530854904621622, -0.7348283771922636, 0.7432652102376149,
    0.23594974138056524, 0.46185473227162593, 0.27240791046479607, -0.6779301162200867,
    0.535475983047878, 1.4124603684044394, -0.03677124294459777, 0.6335944644542391,
    -0.125903192963739, 1.0285554273542712, 0.6666366521512817, 0.8758194707912133,
    0.3484229955590589, 1.6400038821107275, -0.3611505786282483, -0.33416607721805125,
    -0.5918599835407998, 0.610962701968474, -0.6224002707066544, -0.6445326365001358,
    0.7274748296203505, 1.1620957720506857, 0.5743514885621694, -2.683103555466855,
    -0.9536324496718003, -1.07348948063148, -1.2075111797268347, -0.4077676482371872,
    1.8175432337026303, -0.3073985537659124, -0.7354457743627153, 0.6988227448389438,
    0.06917172943950622, 0.12068112866070582, -0.6866741120790538, -0.0015044670379158913,
    0.43453717981416906, -1.9113065771604514, -1.610224331010523, 1.0845605588518257,
    0.8430045749240583, -0.5066567175591229, -1.020203904417219, -0.18554662570969443,
    -1.1936522904412012, -0.3400969906062227, 1.651100423975727, 0.1320718435065325,
    1.1662884363547947, -0.22262052870934315, 0.3694155619109898, 1.3858304929992982,
    -1.3359375572222492, -0.34747799464982515, -0.1568985005454348, 0.28198117936536454,
    1.553666722804394, 0.6855270035798681, -1.4976665985180717, -0.2709720411793551,
    -0.8936434154830173, -0.919047029962896, 2.024827715003513, -1.0629706837475945,
    0.23639517490996417, -0.7152122320787201, 0.8609809399519063, 0.35370323854134944,
    0.1274277181041873, -0.07616714005920917, 1.1377169165755536, -0.9316998851391717,
    -0.7269383253215163, -1.1166060472205357, 1.334546412220603, -0.2935663794448887,
    -1.03740077070428, -0.4190734003279602, 2.499647141912049, -0.10747295455808797,
    0.8500205977374702, 0.4651818264795043, -0.012383282080929063, -0.6927049513484409,
    -0.33429524042418257, -0.3544524150979252, -2.209276174952708, 2.590132165299634,
    0.9248362579408633, 0.11628650676709631, -0.20334913839455843, -0.7896443817288501,
    0.949621715476415, -0.18685598546529084, 0.47927255908121963, -1.3874951680999685,
    0.3784765367574817, 2.000301160167004, -0.28962886468938337, 0.7999549486302511,
    0.03533363711049965, 1.1051905403205458, 1.0674245093302333, 0.06164637112836233,
    -0.559585430021553, 0.2867541614425335, 0.04176902945224784, -0.6179033056301174,
    0.45647884748874545, 0.4323228618761901, -0.8890266047821327, -0.1114878979154479,
    2.921139507657893, 0.8168344872544508, 0.09777931084435634, 2.511082373702184,
    -0.45540319859640854, -2.47685411921746, -1.9069414995045355, -1.5195110137903052,
    0.2600550542500467, 0.976356295342398, -2.170190238668888, 1.1172437209364225,
    -1.2277384405743208, 0.25643484822861606, 0.463919602174066, 0.43232983369059774,
    0.0075470802723938074, 0.17099551394253604, -1.139820149948546, 0.27821689039644487,
    0.979652364759179, 0.9262226307647625, 2.6128529070721185, 1.0832325419401145,
    0.7264273559501742, 1.6635005917178431, 0.24113763858859116, -1.2898772197929023,
    -2.23985985733975, 1.2765709163818362, 0.5680313489899385, 0.847296954372218,
    -0.3328748962507801, 0.34482939616746583, 1.8823816030932006, 0.33483420185153473,
    -1.1155186762678087, -0.43144971563468354, 1.385110615586996, -1.089961064286938,
    -2.58142946001913, -2.293955187945487, -1.3389389586186435, 0.7993935284932526,
    0.08846320092734136, -0.7572771271592771, -1.2851365294184347, -0.11398930813306221,
    -0.1595956330434021, -0.5639269440512877, -0.24525414605240478, -0.7631817772148304,
    1.8032219405855618, -2.3669413655499887, 0.12218885596494325, -1.014405574517355,
    0.7065164385024355, -0.23510619737365038, 0.36602144724812463, 0.531596243829064,
    0.2053262383967149, 0.9910404617440158, -1.391477754463506, 0.9516989121641768,
    -0.218942449625786, 0.38064437732387874, 1.5565333740979994, 1.124406837228961,
    1.983906260402673, -2.250591833413329, -0.9558816529403455, 0.9641676674228251,
    -1.130678125936227, -0.18259281381333614, 1.7078758612485556, 0.8746999899786561,
    -0.9622686699630217, 0.4538064407814815, 0.6453005002956944, 0.06737638601500909,
    -0.10050634112829009, 0.1415574756124382, -1.5005136959043504, 0.12651241840846753,
    -0.9669110793525206, 0.39357107135464237, 0.42921695904368384, -0.892793268783839,
    0.612671144108547, 0.3558124292565846, -0.04209628672662296, 0.7258067220827112,
    -0.31279669658828074, -0.28415798222731575};
inline constexpr double kSample_exponential_100[] = {
    2.3661094652988344, 0.2483533724528874, 0.6449848037005707, 1.4259589851925063,
    1.6972274497500655, 1.1496380997892923, 2.049830063373177, 0.6957463040771507,
    1.400283657519085, 0.43860092920380633, 2.6347536862428695, 0.09613870186593801,
    0.7882658043271424, 0.4293625296177692, 1.4551489895108602, 0.6069896344466151,
    0.29886023508815873, 1.2401169736233668, 2.5704746308890885, 0.2386885356061698,
    0.5791943717448829, 1.6882282585906974, 0.33478647325807154, 0.08963354295744108,
    1.1933908001278546, 0.08354243172433384, 0.0840989764780438, 2.1179243033036204,
    0.5358057205266411, 0.04848583981387919, 0.43562756590040874, 2.8798013817207604,
    0.6945730771362302, 1.6641179961935262, 1.5070129044123088, 0.11177219109451088,
    2.8181973283044086, 0.20936326141818384, 4.164178308408567, 2.3837102963241006,
    0.11616839477332905, 0.23427013780532951, 0.583096536644748, 1.277508382420745,
    0.14128307994153536, 1.5912277125867735, 1.2573060856639022, 1.4278002462902142,
    2.0468954621015216, 0.7182262008463138, 0.04722432949314238, 0.07036915172923304,
    0.05062193218143241, 2.603629152158689, 0.8383607239114065, 0.33944025260331395,
    2.322994419585493, 0.0443620197527025, 0.3672005057497523, 2.936288989028476,
    0.2115123527897651, 1.5149238552159956, 0.4354130247671218, 3.32629705301496,
    1.5259586870940807, 0.06720523923736862, 0.031244791798205697, 3.646210347157999,
    0.0074004938621929865, 0.10326690096318467, 0.757339474177098, 1.8741517355958714,
    0.2344233627240629, 0.6491528688254928, 0.6292647135487839, 1.7281671848592268,
    0.13262675531583729, 0.2534136917871879, 1.1723653561820513, 0.7800721513529535,
    1.0170904617073808, 3.4876904758503757, 1.3317548574998048, 1.8679496265622981,
    0.9116082548524936, 0.8409133755597406, 0.09345550455302107, 0.5642712460147148,
    1.9875594157949328, 0.5284927209987959, 0.9129072899952819, 0.13199648693891983,
    0.8343442658815843, 0.4649483756364276, 0.1681379238984896, 0.4223737762259826,
    0.1310134760657813, 0.11422680226595217, 0.8997429938647517, 0.13037058952347805};
inline constexpr double kSample_uniform_57[] = {
    0.3854867359303047, 0.631634222672115, -0.31118648441428665, -0.9103236486191624,
    0.14319451406746198, -0.707509146552805, 0.4375427537509424, -0.30928699184832054,
    -0.08598064878225742, 0.9518757747803506, 0.5629320555440613, 0.6875800905279519,
    0.11022876814972049, 0.8832427251717863, -0.9633483612497804, 0.7783678117837225,
    -0.22048303330017283, -0.5365197442323719, 0.06878845450672189, 0.8893805573055131,
    -0.33800337839186545, 0.8172423621773839, -0.06533677498982882, 0.9345755295774623,
    0.5284539667983699, 0.5667076953277481, -0.2769450341385129, 0.17557598042699785,
    -0.502901681014936, 0.6002773000259434, -0.4829467748847176, 0.3452193993660253,
    -0.8493091306708949, -0.5062604144884171, -0.28375912514179435, -0.6558890675078535,
    -0.4794092927153766, -0.5963935009132277, -0.9204726057746822, -0.31426200333184884,
    -0.0635006362258721, -0.16530113197065632, 0.7990478164724091, -0.8222512666247692,
    0.24793198880481548, -0.30252645368765063, -0.9480644811088106, 0.5459970044161859,
    -0.15597151083106686, 0.9524047491372805, 0.5490348813696297, 0.737607986275673,
    0.13198663040175496, -0.32097142534089707, 0.7087762162491893, -0.1736781247299113,
    0.7426366840841361};

struct NormalityCase {
  const double* values;
  std::size_t n;
  double k2;
  double p;
};

inline constexpr NormalityCase kNormalityCases[] = {
    {kSample_normal_100, 100, 3.115625185669705, 0.21059622743961454},
    {kSample_normal_20, 20, 1.03487590858439, 0.5960456896954665},
    {kSample_normal_250, 250, 1.555893521339381, 0.4593481954906944},
    {kSample_exponential_100, 100, 19.508334756693113, 5.805223331201422e-05},
    {kSample_uniform_57, 57, 16.483112241499374, 0.0002634739330323741},
};

}  // namespace stormcast::reference
