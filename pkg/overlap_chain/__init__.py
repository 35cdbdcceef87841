# overlap_chain - 重なりを許すアンカーチェイニング（対称順序被覆スコア）の CLI ツール
