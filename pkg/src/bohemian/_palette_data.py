"""Fixed 256-entry RGB palette tables (hex-encoded, 768 bytes each).

Sampled once from matplotlib's viridis, cividis and copper colormaps so
rendered images are byte-deterministic without a plotting dependency.
"""

TABLES = {
    "viridis": (
        "44015444025645045745055946075a46085c460a5d460b5e470d60470e61471063471164"
        "47136548146748166848176948186a481a6c481b6d481c6e481d6f481f70482071482173"
        "482374482475482576482677482878482979472a7a472c7a472d7b472e7c472f7d46307e"
        "46327e46337f463480453581453781453882443983443a83443b84433d84433e85423f85"
        "4240864241864142874144874045884046883f47883f48893e49893e4a893e4c8a3d4d8a"
        "3d4e8a3c4f8a3c508b3b518b3b528b3a538b3a548c39558c39568c38588c38598c375a8c"
        "375b8d365c8d365d8d355e8d355f8d34608d34618d33628d33638d32648e32658e31668e"
        "31678e31688e30698e306a8e2f6b8e2f6c8e2e6d8e2e6e8e2e6f8e2d708e2d718e2c718e"
        "2c728e2c738e2b748e2b758e2a768e2a778e2a788e29798e297a8e297b8e287c8e287d8e"
        "277e8e277f8e27808e26818e26828e26828e25838e25848e25858e24868e24878e23888e"
        "23898e238a8d228b8d228c8d228d8d218e8d218f8d21908d21918c20928c20928c20938c"
        "1f948c1f958b1f968b1f978b1f988b1f998a1f9a8a1e9b8a1e9c891e9d891f9e891f9f88"
        "1fa0881fa1881fa1871fa28720a38620a48621a58521a68522a78522a88423a98324aa83"
        "25ab8225ac8226ad8127ad8128ae8029af7f2ab07f2cb17e2db27d2eb37c2fb47c31b57b"
        "32b67a34b67935b77937b87838b9773aba763bbb753dbc743fbc7340bd7242be7144bf70"
        "46c06f48c16e4ac16d4cc26c4ec36b50c46a52c56954c56856c66758c7655ac8645cc863"
        "5ec96260ca6063cb5f65cb5e67cc5c69cd5b6ccd5a6ece5870cf5773d05675d05477d153"
        "7ad1517cd2507fd34e81d34d84d44b86d54989d5488bd6468ed64590d74393d74195d840"
        "98d83e9bd93c9dd93ba0da39a2da37a5db36a8db34aadc32addc30b0dd2fb2dd2db5de2b"
        "b8de29bade28bddf26c0df25c2df23c5e021c8e020cae11fcde11dd0e11cd2e21bd5e21a"
        "d8e219dae319dde318dfe318e2e418e5e419e7e419eae51aece51befe51cf1e51df4e61e"
        "f6e620f8e621fbe723fde725"
    ),
    "cividis": (
        "00224e00234f00245100255300255400265600275800285900285b00295d002a5f002a61"
        "002b62002c64002c66002d68002e6a002e6c002f6d00306f003070003170003171013271"
        "0533710833700c34700f357012357014367016377018376f1a386f1c396f1e3a6f203a6f"
        "213b6e233c6e243c6e263d6e273e6e293f6e2a3f6d2b406d2d416d2e416d2f426d31436d"
        "32436d33446d34456c35456c36466c38476c39486c3a486c3b496c3c4a6c3d4a6c3e4b6c"
        "3f4c6c404c6c414d6c424e6c434e6c444f6c45506c46516c47516c48526c49536c4a536c"
        "4b546c4c556c4d556c4e566c4f576c50576c51586d52596d535a6d545a6d555b6d555c6d"
        "565c6d575d6d585e6d595e6e5a5f6e5b606e5c616e5d616e5e626e5e636f5f636f60646f"
        "61656f62656f636670646770656870656870666970676a71686a71696b716a6c716b6d72"
        "6c6d726c6e726d6f726e6f736f7073707173717274727274727374737475747475757575"
        "7676767777767777777878777979777a7a787b7a787c7b787d7c787e7c787e7d787f7e78"
        "807f78817f788280798381798482798582798683798784788885788985788a86788b8778"
        "8c88788d88788e89788f8a78908b78918b78928c78928d78938e78948e77958f77969077"
        "9791779892779992779a93769b94769c95769d95769e96769f9775a09875a19975a29975"
        "a39a74a49b74a59c74a69c74a79d73a89e73a99f73aaa073aba072aca172ada272aea371"
        "afa471b0a571b1a570b3a670b4a76fb5a86fb6a96fb7a96eb8aa6eb9ab6dbaac6dbbad6d"
        "bcae6cbdae6cbeaf6bbfb06bc0b16ac1b26ac2b369c3b369c4b468c5b568c6b667c7b767"
        "c8b866c9b965cbb965ccba64cdbb63cebc63cfbd62d0be62d1bf61d2c060d3c05fd4c15f"
        "d5c25ed6c35dd7c45cd9c55cdac65bdbc75adcc859ddc858dec958dfca57e0cb56e1cc55"
        "e2cd54e4ce53e5cf52e6d051e7d150e8d24fe9d34eead34cebd44bedd54aeed649efd748"
        "f0d846f1d945f2da44f3db42f5dc41f6dd3ff7de3ef8df3cf9e03afbe138fce236fde334"
        "fee434fee535fee636fee838"
    ),
    "copper": (
        "0000000101000202010402010503020604020705030905030a06040b07040c08050e0905"
        "0f0906100a06110b07130c07140c08150d08160e09170f0919100a1a100a1b110b1c120b"
        "1e130c1f140c20140d21150d23160e24170e25170f26180f281910291a102a1b112b1b11"
        "2c1c122e1d122f1e13301e13311f143320143421153522153622163823163924173a2517"
        "3b25183d26183e27193f281940291a41291a432a1b442b1b452c1c462d1c482d1d492e1d"
        "4a2f1e4b301e4d301f4e311f4f3220503320523421533421543522553622563723583723"
        "5938245a39245b3a255d3b255e3b265f3c26603d27623e27633e28643f28654029674129"
        "68422a69422a6a432b6b442b6d452c6e462c6f462d70472d72482e73492e74492f754a2f"
        "774b30784c30794d317a4d317c4e327d4f327e50337f5033805134825234835335845435"
        "8554368755368856378957378a57388c58388d59398e5a398f5b3a915b3a925c3b935d3b"
        "945e3c955f3c975f3d98603d99613e9a623e9c623f9d633f9e64409f6540a16641a26641"
        "a36742a46842a66943a76943a86a44a96b44aa6c45ac6d45ad6d46ae6e46af6f47b17047"
        "b27048b37148b47249b67349b7744ab8744ab9754bbb764bbc774cbd784cbe784dbf794d"
        "c17a4ec27b4ec37b4fc47c4fc67d50c77e50c87f51c97f51cb8052cc8152cd8253ce8253"
        "d08354d18454d28555d38655d48656d68756d78857d88957d98958db8a58dc8b59dd8c59"
        "de8d5ae08d5ae18e5be28f5be3905ce5915ce6915de7925de8935ee9945eeb945fec955f"
        "ed9660ee9760f09861f19861f29962f39a62f59b63f69b63f79c64f89d64fa9e64fb9f65"
        "fc9f65fda066fea166ffa267ffa267ffa368ffa468ffa569ffa669ffa66affa76affa86b"
        "ffa96bffaa6cffaa6cffab6dffac6dffad6effad6effae6fffaf6fffb070ffb170ffb171"
        "ffb271ffb372ffb472ffb473ffb573ffb674ffb774ffb875ffb875ffb976ffba76ffbb77"
        "ffbb77ffbc78ffbd78ffbe79ffbf79ffbf7affc07affc17bffc27bffc37cffc37cffc47d"
        "ffc57dffc67effc67effc77f"
    ),
}
